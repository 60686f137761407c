#include "support.hpp"
#include "teich/circle_map.hpp"
#include "teich/errors.hpp"
#include "teich/fixtures.hpp"

using namespace teich;

TEST_CASE("identity and mobius circle maps") {
    CircleMap id = CircleMap::identity(256);
    CHECK(id.lift(1.234) == doctest::Approx(1.234));
    CHECK(id.derivative(0.3) == doctest::Approx(1.0));
    MobiusMap m = MobiusMap::translation(cplx(0.3, 0.1));
    CircleMap g = CircleMap::from_mobius(m, 1024);
    for (double t : {0.0, 0.7, 2.5, 5.9}) {
        CHECK(std::abs(g.apply(std::polar(1.0, t)) - m(std::polar(1.0, t))) < 1e-10);
        CHECK(g.lift(t + 2 * pi) == doctest::Approx(g.lift(t) + 2 * pi));
    }
    CHECK(g.certify_monotone());
}

TEST_CASE("composition, inverse and mobius actions") {
    CircleMap e = fixtures::circle("ellipse:0.1", 1024);
    CircleMap inv = e.inverse();
    CHECK(e.compose(inv).sup_distance(CircleMap::identity(1024)) < 1e-8);
    for (double phi : {0.2, 1.9, 4.4}) CHECK(e.lift(e.inverse_lift(phi)) == doctest::Approx(phi).epsilon(1e-12));
    MobiusMap m = MobiusMap::translation(0.4);
    CircleMap pre = e.pre_mobius(m), post = e.post_mobius(m);
    for (double t : {0.3, 3.0}) {
        cplx z = std::polar(1.0, t);
        CHECK(std::abs(pre.apply(z) - e.apply(m(z))) < 1e-8);
        CHECK(std::abs(post.apply(z) - m(e.apply(z))) < 1e-8);
    }
}

TEST_CASE("cusp fixture") {
    CircleMap c = fixtures::circle("cusp:0.5", 1024);
    CHECK(c.certify_monotone());
    CHECK(c.lift(2 * pi) == doctest::Approx(2 * pi).epsilon(1e-10));
    CHECK(c.derivative(0.0) == doctest::Approx(1.0 - 0.5 * fixtures::cusp_mean(0.5)));
    CHECK_THROWS_AS(fixtures::circle("cusp:2"), ArgumentError);
}

TEST_CASE("non-monotone samples are rejected") {
    std::vector<double> lift{0.0, 2.0, 1.0, 4.0}, d{1, 1, 1, 1};
    CHECK_THROWS(CircleMap(lift, d));
}
