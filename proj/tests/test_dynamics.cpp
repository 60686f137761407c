#include "support.hpp"
#include "teich/dynamics.hpp"
#include "teich/errors.hpp"
#include "teich/fixtures.hpp"

using namespace teich;

TEST_CASE("contraction bound") {
    CHECK(contraction_bound(0.5, 1.0, 0.5, 0.01) == doctest::Approx(2.0 * (std::pow(0.6, 1.5) + 0.1)));
    CHECK(contraction_bound(0.5, 1.0, 0.5, 0.01) > 1.0);
    CHECK(contraction_bound(0.5, 1.0, 0.5, 0.0004) == doctest::Approx(2.0 * (std::pow(0.52, 1.5) + 0.02)));
    CHECK(contraction_bound(0.5, 1.0, 0.5, 0.0004) < 0.8);
    CHECK(contraction_bound(0.5, 0.0, 0.5, 0.3) == doctest::Approx(std::pow(0.5, 0.5)));
}

TEST_CASE("choose delta") {
    Germ1D lin = fixtures::germ("linear:0.5");
    DeltaChoice d = choose_delta(lin);
    CHECK(d.delta == doctest::Approx(lin.delta()));
    CHECK(d.c_delta < 1e-9);
    CHECK(d.factor == doctest::Approx(std::pow(0.5, lin.alpha())).epsilon(1e-6));
    Germ1D q = fixtures::germ("quadratic:0.5:0.1");
    DeltaChoice dq = choose_delta(q);
    CHECK(dq.factor <= default_config().contraction_target);
    CHECK(contraction_bound(q.a(), dq.c_delta, q.alpha(), dq.delta) == doctest::Approx(dq.factor));
    CHECK_THROWS_AS(choose_delta(fixtures::germ("linear:2")), ArgumentError);
}

TEST_CASE("germ inversion") {
    Germ1D g = fixtures::germ("linear:2", 0.5);
    GermNormalization n = normalize_germ(g);
    CHECK(n.inverted);
    CHECK(n.germ.a() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_FALSE(normalize_germ(fixtures::germ("linear:0.5")).inverted);
    CHECK_THROWS_AS(fixtures::germ("linear:-1"), MonotonicityError);
}

TEST_CASE("linear germ is already linear") {
    Linearization L = sternberg_linearize(fixtures::germ("linear:0.5"), 1e-12);
    CHECK(L.residual < 1e-14);
    for (std::size_t k = 0; k < L.x.size(); k += 97) CHECK(L.h[k] == doctest::Approx(L.x[k]).epsilon(1e-12));
    KoenigsResult K = koenigs_oracle(fixtures::germ("linear:0.5"), 10, {-0.3, 0.1, 0.4});
    CHECK(K.h[0] == doctest::Approx(-0.3));
    CHECK(K.h[2] == doctest::Approx(0.4));
}

TEST_CASE("quadratic germ") {
    Germ1D g = fixtures::germ("quadratic:0.5:0.1");
    Linearization L = sternberg_linearize(g, 1e-10);
    CHECK(L.residual < 1e-8);
    CHECK(L.h_prime0 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(L.taylor2 == doctest::Approx(0.1 / (0.5 - 0.25)).epsilon(1e-2));
    CHECK(L.contraction_factor <= L.bound + 1e-9);
    std::vector<double> xs{-0.5 * L.delta, -0.1 * L.delta, 0.2 * L.delta, 0.5 * L.delta};
    KoenigsResult K = koenigs_oracle(g, 40, xs);
    CHECK_FALSE(K.partial);
    for (std::size_t k = 0; k < xs.size(); ++k) CHECK(std::abs(K.h[k] - L(xs[k])) < 1e-7);
    for (double t : xs) CHECK(L.inverse(L(t)) == doctest::Approx(t).epsilon(1e-10));
    // uniqueness: a smaller interval gives the same conjugacy
    Linearization L2 = sternberg_linearize(g, 1e-10, default_config(), L.delta / 2);
    for (double t : {-0.2 * L.delta, 0.3 * L.delta}) CHECK(std::abs(L2(t) - L(t)) < 1e-7);
}

TEST_CASE("holder germ") {
    Germ1D g = fixtures::germ("holder:0.5:0.05:0.5");
    Linearization L = sternberg_linearize(g, 1e-10);
    CHECK(L.residual < 1e-3);
    CHECK(L.iterations > 1);
    // the residual is a resolution floor of order h^alpha for a C^{1+alpha} germ
    auto at = [](int n) {
        Config cfg = default_config();
        cfg.germ_samples = n;
        auto fn = [](double x) { return 0.5 * x + 0.05 * x * std::sqrt(std::abs(x)); };
        auto dfn = [](double x) { return 0.5 + 0.075 * std::sqrt(std::abs(x)); };
        return sternberg_linearize(Germ1D::from_function(fn, dfn, 0.5, 0.5, n), 1e-10, cfg).residual;
    };
    double r1 = at(1001), r2 = at(16001);
    double order = std::log(r1 / r2) / std::log(16.0);
    CHECK(order == doctest::Approx(0.5).epsilon(0.2));
    CHECK_THROWS_AS(sternberg_linearize(fixtures::germ("linear:2"), 1e-10), ArgumentError);
}

TEST_CASE("germ csv") {
    Germ1D g = fixtures::germ("quadratic:0.5:0.1");
    Germ1D back = Germ1D::from_csv(g.to_csv(), g.alpha());
    CHECK(back.x().size() == g.x().size());
    CHECK(back.a() == doctest::Approx(g.a()).epsilon(1e-6));
}

TEST_CASE("circle conjugates") {
    MobiusMap gamma = MobiusMap::translation(0.5);
    CircleMap id = conjugate_circle(CircleMap::identity(1024), gamma);
    CHECK(id.sup_distance(CircleMap::from_mobius(gamma, 1024)) < 1e-10);
    MobiusMap f = MobiusMap::translation(cplx(0.1, 0.3));
    CircleMap c = conjugate_circle(CircleMap::from_mobius(f, 1024), gamma);
    MobiusMap expect = f * gamma * f.inverse();
    CHECK(c.sup_distance(CircleMap::from_mobius(expect, 1024)) < 1e-8);
    CHECK(translation_length(expect) == doctest::Approx(std::log(3.0)));
    auto fp = circle_fixed_points(c);
    REQUIRE(fp.size() == 2);
    double prod = fp[0].derivative * fp[1].derivative;
    CHECK(prod == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("promotion experiment") {
    MobiusMap gamma = MobiusMap::translation(0.5);
    PromotionReport m = promotion_experiment(CircleMap::from_mobius(MobiusMap::translation(0.2), 2048), gamma, 1.5);
    CHECK(m.status == "ok");
    CHECK(m.hypothesis_holds);
    CHECK(m.reconstruction_error < 1e-6);
    PromotionReport e = promotion_experiment(fixtures::circle("ellipse:0.1"), gamma, 1.5);
    CHECK(e.status == "ok");
    CHECK(e.promoted);
    for (const auto& h : e.global_ladder) CHECK(h.finite);
    PromotionReport c = promotion_experiment(fixtures::circle("cusp:0.5"), gamma, 1.8);
    CHECK(c.status == "aborted");
    CHECK_FALSE(c.hypothesis_holds);
    CHECK_THROWS_AS(promotion_experiment(CircleMap::identity(), MobiusMap::rotation(1.0), 1.5), ClassificationError);
}
