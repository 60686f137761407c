#include <random>

#include "support.hpp"
#include "teich/circle_map.hpp"
#include "teich/errors.hpp"
#include "teich/fixtures.hpp"
#include "teich/mobius.hpp"

using namespace teich;

TEST_CASE("classification") {
    CHECK(classify(MobiusMap::identity()) == MobiusClass::identity);
    auto h = MobiusMap::translation(0.5);
    CHECK(classify(h) == MobiusClass::hyperbolic);
    CHECK(h.trace() == doctest::Approx(2.0 / std::sqrt(0.75)));
    CHECK(classify(MobiusMap::rotation(pi / 3)) == MobiusClass::elliptic);
    auto p = MobiusMap::from_coefficients(cplx(1.0, 0.5), cplx(0.0, 0.5));
    CHECK(classify(p) == MobiusClass::parabolic);
}

TEST_CASE("translation length") {
    auto h = MobiusMap::translation(0.5);
    CHECK(translation_length(h) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(translation_length(h) == doctest::Approx(2.0 * std::acosh(h.trace() / 2.0)).epsilon(1e-12));
    CHECK(translation_length(h * h) == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-12));
    CHECK(translation_length(MobiusMap::translation(1e-4)) < 1e-3);
    CHECK_THROWS_AS(translation_length(MobiusMap::rotation(1.0)), ClassificationError);
}

TEST_CASE("length is a conjugacy invariant") {
    std::mt19937_64 rng(4);
    auto h = MobiusMap::translation(0.5);
    for (int k = 0; k < 20; ++k) {
        MobiusMap g = fixtures::random_mobius(rng, 0.8);
        MobiusMap c = g * h * g.inverse();
        CHECK(classify(c) == MobiusClass::hyperbolic);
        CHECK(translation_length(c) == doctest::Approx(std::log(3.0)).epsilon(1e-9));
    }
}

TEST_CASE("group laws") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 30; ++k) {
        MobiusMap f = fixtures::random_mobius(rng), g = fixtures::random_mobius(rng);
        cplx z = std::polar(0.4, 0.3 * k);
        CHECK(std::abs((f * g)(z) - f(g(z))) < 1e-13);
        CHECK(std::abs(f.inverse()(f(z)) - z) < 1e-13);
        CHECK(f.det() == doctest::Approx(1.0));
        CHECK(std::abs(std::abs(f(std::polar(1.0, 0.1 * k))) - 1.0) < 1e-14);
        CHECK(std::abs(f(1.0 / z) - f.apply_at_inverse(z)) < 1e-12 * std::max(1.0, std::abs(f(1.0 / z))));
        CHECK(distance(f, MobiusMap::from_json(f.to_json())) < 1e-15);
        double h = 1e-6;
        CHECK(std::abs((f(z + h) - f(z - h)) / (2 * h) - f.derivative(z)) < 1e-7);
    }
}

TEST_CASE("lehner check") {
    FuchsianSample one{{MobiusMap::translation(0.5)}, 6};
    auto r = lehner_check(one);
    CHECK(r.status == "satisfied");
    REQUIRE(r.min_length.has_value());
    CHECK(*r.min_length == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(lehner_check(FuchsianSample{}).status == "indeterminate");
    CHECK_FALSE(lehner_check(FuchsianSample{}).min_length.has_value());
    FuchsianSample pp{{MobiusMap::translation(0.9), MobiusMap::translation(cplx(0.0, 0.9))}, 4};
    auto q = lehner_check(pp);
    REQUIRE(q.min_length.has_value());
    CHECK(*q.min_length > 0.0);
    CHECK(q.hyperbolic_count > 2);
    CHECK(lehner_check(one, 10.0).status == "violated");
}

TEST_CASE("three-point maps and normalization") {
    cplx p1 = std::polar(1.0, 0.1), p2 = std::polar(1.0, 2.0), p3 = std::polar(1.0, 4.0);
    cplx q1 = std::polar(1.0, 0.5), q2 = std::polar(1.0, 1.5), q3 = std::polar(1.0, 5.0);
    MobiusMap m = mobius_from_triples(p1, p2, p3, q1, q2, q3);
    CHECK(std::abs(m(p1) - q1) < 1e-12);
    CHECK(std::abs(m(p2) - q2) < 1e-12);
    CHECK(std::abs(m(p3) - q3) < 1e-12);

    auto id = normalize_fixing_1_i_minus1(CircleMap::identity(512));
    CHECK(distance(id.m, MobiusMap::identity()) < 1e-12);

    auto mob = normalize_fixing_1_i_minus1(CircleMap::from_mobius(MobiusMap::translation(cplx(0.3, -0.2)), 512));
    CHECK(mob.normalized.sup_distance(CircleMap::identity(512)) < 1e-8);

    auto rot = normalize_fixing_1_i_minus1(CircleMap::from_mobius(MobiusMap::rotation(pi / 2), 512));
    CHECK(distance(rot.m, MobiusMap::rotation(-pi / 2)) < 1e-12);
    CHECK(rot.normalized.sup_distance(CircleMap::identity(512)) < 1e-10);
}
