#include "support.hpp"
#include "teich/bers.hpp"
#include "teich/errors.hpp"
#include "teich/fixtures.hpp"
#include "teich/solver.hpp"

using namespace teich;

namespace {
const double k = 0.1;
cplx exact_phi(cplx z) {
    cplx d = z * z - k;
    return -6.0 * k / (d * d);
}
}  // namespace

TEST_CASE("schwarzian of z + k/z") {
    cplx s = local_schwarzian([](cplx z) { return z + k / z; }, 2.0, 0.05);
    CHECK(s.real() == doctest::Approx(-0.6 / 15.21).epsilon(1e-8));
    CHECK(std::abs(s.imag()) < 1e-10);
    QuadraticForm phi = schwarzian_of(test::grid(), [](cplx z) { return z + k / z; }, 0.0);
    CHECK(std::abs(phi.evaluate(2.0) - exact_phi(2.0)) < 1e-6);
    CHECK(phi.weighted(2.0) == doctest::Approx(2.25 * 0.6 / 15.21).epsilon(1e-5));
    CHECK(std::abs(phi.at_infinity() - (-6.0 * k)) < 1e-6);
    CHECK(std::abs(local_schwarzian([](cplx z) { return (2.0 * z + 1.0) / (z + 3.0); }, cplx(0.4, 0.2), 0.1)) < 1e-10);
}

TEST_CASE("bers projection of simple coefficients") {
    const auto& g = test::grid();
    QuadraticForm zero = bers_projection(fixtures::field("zero", g));
    CHECK(b_norm(zero) < 1e-10);
    CHECK(b_norm(bers_projection(fixtures::field("stretch:2", g))) < 5e-3);
    QuadraticForm phi = bers_projection(fixtures::field("const:0.1", g));
    const auto& near = phi.near();
    double worst = 0.0;
    for (int j = 0; j < near.circles(); ++j)
        for (int i = 0; i < near.n(); ++i) {
            cplx z = near.point(j, i);
            if (std::abs(z) < 1.5) continue;
            worst = std::max(worst, std::abs(near.at(j, i) - exact_phi(z)) / std::abs(exact_phi(z)));
        }
    CHECK(worst < 1e-3);
    CHECK(holomorphy_residual(phi) < 1e-2);
}

TEST_CASE("norms of the constant form") {
    QuadraticForm phi = fixtures::form("constant:0.1", test::grid());
    BNorm b = b_norm_detail(phi);
    CHECK(b.value >= 0.15 - 1e-3);
    CHECK(b.value <= 0.15 + 1e-9);
    CHECK(std::abs(b.argmax_w) < 0.05);
    auto profile = b0_decay_profile(phi);
    REQUIRE(profile.size() == test::grid().boundary_offsets.size());
    for (std::size_t j = 1; j < profile.size(); ++j) CHECK(profile[j].value < profile[j - 1].value);
    DecayFit fit = decay_exponent(phi);
    CHECK(fit.alpha_hat == doctest::Approx(2.0).epsilon(0.05));
    CHECK(profile_vanishes(profile));
    CHECK_FALSE(b0_alpha_norm(phi, 0.5).infinite);
    CHECK_FALSE(a_p_norm(phi, 2).infinite);
    CHECK_THROWS_AS(b0_alpha_norm(phi, 1.5), ArgumentError);
}

TEST_CASE("zero form") {
    QuadraticForm z = QuadraticForm::zero(test::grid());
    CHECK(b_norm(z) == 0.0);
    CHECK(b0_alpha_norm(z, 0.3).value == 0.0);
    CHECK(a_p_norm(z, 2).value == 0.0);
    CHECK(invariance_residual(z, FuchsianSample{{MobiusMap::translation(0.5)}, 3}) == 0.0);
}

TEST_CASE("decay exponent from synthetic profiles") {
    std::vector<DecayBand> lin, flat;
    for (double e : test::grid().boundary_offsets) {
        lin.push_back({e, e});
        flat.push_back({e, 0.3});
    }
    CHECK(decay_exponent_from_profile(lin).alpha_hat == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(decay_exponent_from_profile(flat).alpha_hat) < 1e-9);
    CHECK(profile_vanishes(lin));
    CHECK_FALSE(profile_vanishes(flat));
    std::vector<DecayBand> floor;
    for (double e : test::grid().boundary_offsets) floor.push_back({e, 1e-13});
    CHECK(decay_exponent_from_profile(floor).lower_bound_only);
    CHECK(profile_vanishes(floor));
}

TEST_CASE("form arithmetic and scaling of norms") {
    const auto& g = test::grid();
    QuadraticForm a = fixtures::form("random:3:0.2", g);
    CHECK(b_norm(a) == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(b_norm(a.scaled(3.0)) == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(b_norm(a - a) == 0.0);
    QuadraticForm b = fixtures::form("random:4:0.1", g);
    CHECK(b_norm(a + b) <= b_norm(a) + b_norm(b) + 1e-9);
    CHECK(holomorphy_residual(a) < 1e-2);
    ComplexGridFunction bad(g, Chart::exterior), far(g, Chart::far);
    for (int j = 0; j < bad.circles(); ++j)
        for (int i = 0; i < bad.n(); ++i) bad.at(j, i) = std::pow(std::conj(bad.point(j, i)), -4);
    CHECK(holomorphy_residual(QuadraticForm(bad, far, 0.0)) > 0.5);
}

TEST_CASE("pullback") {
    const auto& g = test::grid();
    QuadraticForm phi = fixtures::form("random:5:0.3", g);
    QuadraticForm same = pullback(phi, MobiusMap::identity());
    CHECK(b_norm(same - phi) < 1e-12);
    MobiusMap gamma = MobiusMap::translation(cplx(0.2, 0.1));
    QuadraticForm p = pullback(phi, gamma);
    // B-norm is a Möbius invariant
    CHECK(b_norm(p) == doctest::Approx(b_norm(phi)).epsilon(1e-3));
    cplx z(1.7, -0.4);
    cplx gz = gamma(z), d = gamma.derivative(z);
    CHECK(std::abs(p.evaluate(z) - phi.evaluate(gz) * d * d) < 1e-9);
    QuadraticForm back = pullback(p, gamma.inverse());
    CHECK(b_norm(back - phi) < 1e-6);
    CHECK(invariance_residual(phi, FuchsianSample{{gamma}, 2}) > 1e-3);
}
