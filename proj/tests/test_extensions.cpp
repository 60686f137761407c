#include "support.hpp"
#include "teich/errors.hpp"
#include "teich/extensions.hpp"
#include "teich/fixtures.hpp"
#include "teich/solver.hpp"

using namespace teich;

TEST_CASE("barycentric point of the identity") {
    CircleMap id = CircleMap::identity(512);
    for (cplx z : {cplx(0.0), cplx(0.5, -0.2), cplx(0.0, 0.95)}) {
        BaryPoint p = barycentric_point(id, z);
        CHECK(std::abs(p.w - z) < 1e-12);
        CHECK(std::abs(p.dz - 1.0) < 1e-9);
        CHECK(std::abs(p.dzbar) < 1e-9);
    }
    CHECK_THROWS_AS(barycentric_point(id, 1.0), DomainError);
}

TEST_CASE("conformal naturality on Möbius boundary maps") {
    MobiusMap m = MobiusMap::translation(cplx(0.3, -0.2)) * MobiusMap::rotation(0.7);
    CircleMap g = CircleMap::from_mobius(m, 1024);
    BarycentricExtension e = barycentric_extension(g, test::coarse());
    double err = 0.0;
    for (int j = 0; j < e.values.circles(); ++j)
        for (int i = 0; i < e.values.n(); ++i) err = std::max(err, std::abs(e.values.at(j, i) - m(e.values.point(j, i))));
    CHECK(err < 1e-9);
    CHECK(sup_norm(e.mu) < 1e-8);
    CHECK(jacobian_constant(e) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("extension of a quasisymmetric map") {
    CircleMap g = fixtures::circle("ellipse:0.1", 1024);
    BarycentricExtension e = barycentric_extension(g, test::coarse());
    CHECK(sup_norm(e.mu) < 1.0);
    CHECK(sup_norm(e.mu) > 1e-3);
    CHECK(e.max_residual < 1e-10);
    CHECK(jacobian_constant(e) < 10.0);
    // naturality: the extension of m o g is m o (extension of g)
    MobiusMap m = MobiusMap::translation(0.25);
    BarycentricExtension e2 = barycentric_extension(g.post_mobius(m), test::coarse());
    double err = 0.0;
    for (int j = 0; j < e.values.circles(); j += 5)
        for (int i = 0; i < e.values.n(); i += 9) err = std::max(err, std::abs(e2.values.at(j, i) - m(e.values.at(j, i))));
    CHECK(err < 1e-6);
}

TEST_CASE("ahlfors-weill section") {
    const auto& g = test::grid();
    CHECK(sup_norm(ahlfors_weill(QuadraticForm::zero(g))) == 0.0);
    QuadraticForm phi = fixtures::form("random:2:0.2", g);
    BeltramiField mu = ahlfors_weill(phi);
    CHECK(sup_norm(mu) == doctest::Approx(2.0 * 0.2).epsilon(1e-2));
    CHECK(aw_pointwise_ratio(phi, mu) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(b_norm(bers_projection(mu) - phi) < 5e-3);
    CHECK_THROWS_AS(ahlfors_weill(fixtures::form("random:2:0.6", g)), RangeError);
}

TEST_CASE("regularity of the identity") {
    RegularityReport r = classify_regularity(CircleMap::identity(1024), test::coarse());
    CHECK(r.field_vanishes);
    CHECK(r.form_vanishes);
    CHECK(r.coherent);
    for (const auto& h : r.holder) {
        CHECK(h.finite);
        CHECK(h.constant < 1e-10);
    }
}

TEST_CASE("regularity of an analytic diffeomorphism") {
    RegularityReport r = classify_regularity(fixtures::circle("ellipse:0.1", 2048), test::grid());
    for (const auto& h : r.holder) CHECK(h.finite);
    CHECK(r.form_decay.alpha_hat == doctest::Approx(2.0).epsilon(0.1));
    CHECK(r.coherent);
}

TEST_CASE("regularity of a derivative cusp") {
    RegularityReport r = classify_regularity(fixtures::circle("cusp:0.5", 4096), GridSpec::standard(512));
    for (const auto& h : r.holder) {
        if (h.alpha <= 0.5 + 1e-9) CHECK(h.finite);
        else CHECK_FALSE(h.finite);
    }
    CHECK(std::abs(r.form_decay.alpha_hat - 0.5) < 0.15);
    CHECK(r.form_vanishes);
}
