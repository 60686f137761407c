#include "support.hpp"
#include "teich/beltrami.hpp"
#include "teich/errors.hpp"
#include "teich/fixtures.hpp"
#include "teich/solver.hpp"

using namespace teich;

namespace {
BeltramiField F(const std::string& name) { return fixtures::field(name, test::grid()); }
}  // namespace

TEST_CASE("sup norm") {
    CHECK(sup_norm(F("zero")) == 0.0);
    CHECK(sup_norm(F("const:0.3")) == doctest::Approx(0.3));
    CHECK(sup_norm(F("stretch:2")) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(F("const:1"), DomainError);
    CHECK_THROWS_AS(F("const:1.2"), DomainError);
}

TEST_CASE("p norm") {
    CHECK(p_norm(F("zero"), 2).value == 0.0);
    CHECK_FALSE(p_norm(F("zero"), 2).infinite);
    for (double p : {1.0, 2.0, 3.5}) CHECK(p_norm(F("const:0.1"), p).infinite);
    NormResult v = p_norm(F("vanish:0.1"), 2);
    CHECK_FALSE(v.infinite);
    CHECK(v.value == doctest::Approx(0.04 * pi).epsilon(1e-3));
    // same closed form for k(1-|z|^2) with p = 4: 4 pi k^4 int (1-r^2)^2 r dr * 2 = 4 pi k^4 / 3
    NormResult v4 = p_norm(F("vanish:0.2"), 4);
    CHECK(v4.value == doctest::Approx(4.0 * pi * std::pow(0.2, 4) / 3.0).epsilon(1e-3));
    CHECK_THROWS_AS(p_norm(F("zero"), 0.5), ArgumentError);
}

TEST_CASE("p norm scales homogeneously") {
    double a = p_norm(F("vanish:0.1"), 2).value, b = p_norm(F("vanish:0.3"), 2).value;
    CHECK(b / a == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("holder weighted norm") {
    CHECK(holder_weighted_norm(F("zero"), 0.5).value == 0.0);
    NormResult h = holder_weighted_norm(F("holder:0.1:0.5"), 0.5);
    CHECK_FALSE(h.infinite);
    CHECK(h.value == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(holder_weighted_norm(F("const:0.1"), 0.5).infinite);
    CHECK(holder_weighted_norm(F("vanish:0.1"), 0.5).value < 1.0);
    CHECK_THROWS_AS(holder_weighted_norm(F("zero"), 1.0), ArgumentError);
    CHECK_THROWS_AS(holder_weighted_norm(F("zero"), 0.0), ArgumentError);
}

TEST_CASE("vanishing profile") {
    CHECK(vanishing_profile(F("zero")).vanishes);
    CHECK(vanishing_profile(F("vanish:0.2")).vanishes);
    CHECK(vanishing_profile(F("holder:0.1:0.5")).vanishes);
    CHECK_FALSE(vanishing_profile(F("const:0.1")).vanishes);
    CHECK_FALSE(vanishing_profile(F("stretch:1.5")).vanishes);
}

TEST_CASE("compose and right translation") {
    auto nu = F("poly:3:0.25"), mu = F("vanish:0.2");
    SolvedMap f = solve_disk(nu);
    CHECK(sup_norm(compose(nu, nu, f)) < 1e-6);
    SolvedMap id = solve_disk(F("zero"));
    const BeltramiField c0 = compose(mu, F("zero"), id);
    const auto& a = c0.samples().values();
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - mu.samples().values()[k]));
    CHECK(d < 1e-10);
    CHECK(sup_norm(right_translate(nu, nu, f)) < 1e-6);
    CHECK_THROWS_AS(compose(mu, F("const:0.1"), f), ConsistencyError);
    CHECK_THROWS_AS(compose(mu, nu, solve_bers(nu)), ConsistencyError);
}

TEST_CASE("inverse stretch has constant modulus") {
    auto st = F("stretch:2");
    SolvedMap f = solve_disk(st);
    BeltramiField c = compose(F("zero"), st, f);
    const auto& s = c.samples();
    double lo = 1.0, hi = 0.0;
    for (int j = 2; j < s.circles() - 4; ++j)
        for (int i = 0; i < s.n(); ++i) {
            lo = std::min(lo, std::abs(s.at(j, i)));
            hi = std::max(hi, std::abs(s.at(j, i)));
        }
    CHECK(lo == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
    CHECK(hi == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
}

TEST_CASE("tail split") {
    auto inner = BeltramiField::from_function(test::grid(), [](cplx z) { return std::abs(z) <= 0.4 ? cplx(0.2) : cplx(0.0); });
    auto tail = tail_part(inner, 0.5);
    CHECK(sup_norm(tail) == 0.0);
    auto outer = BeltramiField::from_function(test::grid(), [](cplx z) { return std::abs(z) > 0.5 ? cplx(0.2) : cplx(0.0); });
    SolvedMap ft = solve_disk(tail_part(outer, 0.5));
    TailSplit sp = split_tail(outer, 0.5, ft);
    CHECK(sup_norm(sp.core) < 1e-6);
    CHECK_THROWS_AS(tail_part(inner, 0.999999), ArgumentError);
}
