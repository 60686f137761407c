#include "support.hpp"
#include "teich/errors.hpp"
#include "teich/fixtures.hpp"
#include "teich/foliation.hpp"

using namespace teich;

namespace {
BeltramiField F(const std::string& name) { return fixtures::field(name, test::grid()); }
}  // namespace

TEST_CASE("space names") {
    for (const char* s : {"B0", "Ap:2", "Ap:3.5", "B0alpha:0.5", "B0posAlpha:0.3"}) CHECK(Space::parse(s).to_string() == s);
    CHECK(Space::parse("Ap").param == 2.0);
    CHECK_THROWS_AS(Space::parse("Ap:1"), ArgumentError);
    CHECK_THROWS_AS(Space::parse("B0alpha:1.5"), ArgumentError);
    CHECK_THROWS_AS(Space::parse("Lp"), ArgumentError);
}

TEST_CASE("membership of the base coefficients") {
    CHECK(field_in_space(F("vanish:0.2"), Space::parse("B0")).first);
    CHECK_FALSE(field_in_space(F("const:0.2"), Space::parse("B0")).first);
    CHECK(field_in_space(F("vanish:0.2"), Space::parse("Ap:2")).first);
    CHECK_FALSE(field_in_space(F("const:0.2"), Space::parse("Ap:2")).first);
    CHECK(field_in_space(F("holder:0.1:0.5"), Space::parse("B0alpha:0.5")).first);
    CHECK_FALSE(field_in_space(F("holder:0.1:0.3"), Space::parse("B0alpha:0.5")).first);
}

TEST_CASE("coset residual") {
    auto nu = F("poly:7:0.2");
    CosetReport z = coset_residual(F("zero"), nu, Space::parse("B0"));
    CHECK(z.delta_b_norm < 1e-9);
    CHECK(z.pass);
    CosetReport v = coset_residual(F("vanish:0.2"), nu, Space::parse("B0"));
    CHECK(v.input_in_space);
    CHECK(v.pass);
    CHECK(v.delta_b_norm > 1e-3);
    CosetReport a = coset_residual(F("vanish:0.2"), F("const:0.2"), Space::parse("Ap:2"));
    CHECK(a.pass);
    CHECK_THROWS_AS(coset_residual(F("const:0.2"), nu, Space::parse("B0")), ArgumentError);
}

TEST_CASE("pointwise composition bound") {
    auto m1 = fixtures::random_field(21, 0.3, test::grid()), m2 = fixtures::random_field(22, 0.3, test::grid()),
         nu = fixtures::random_field(23, 0.3, test::grid());
    SolvedMap f = solve_disk(nu);
    Base2Report same = check_base2(m1, m1, nu, f);
    CHECK(same.max_violation <= 1e-12);
    Base2Report r = check_base2(m1, m2, nu, f);
    CHECK(r.max_violation <= 5e-3);
    CHECK(r.identity_residual < 1e-4);
    CHECK(r.points > 1000);
    auto zero = F("zero");
    Base2Report id = check_base2(m1, m2, zero, solve_disk(zero));
    CHECK(id.identity_residual <= 1e-10);
    CHECK(id.max_violation <= 1e-10);
}

TEST_CASE("integral composition bound") {
    auto mu = fixtures::random_field(31, 0.3, test::grid()), nu = fixtures::random_field(32, 0.3, test::grid());
    Base1Report same = check_base1(mu, mu);
    for (double v : same.lhs) CHECK(v < 1e-8);
    Base1Report r = check_base1(mu, nu);
    CHECK(r.samples > 0);
    CHECK(r.max_ratio <= 1.05);
    CHECK(r.lhs.size() == r.rhs.size());
}

TEST_CASE("p-integrable claims") {
    auto mu = F("vanish:0.1"), mu2 = F("vanish:0.15"), nu = F("poly:4:0.2");
    ClaimsReport same = check_claims_p(mu, mu, nu, 2);
    CHECK(same.claim1_lhs < 1e-8);
    CHECK(same.claim2_lhs < 1e-8);
    ClaimsReport id = check_claims_p(mu, mu2, F("zero"), 2);
    CHECK(id.claim2_constant() == doctest::Approx(1.0).epsilon(1e-9));
    ClaimsReport r = check_claims_p(mu, mu2, nu, 2);
    CHECK(r.claim1_finite);
    CHECK(r.claim2_finite);
    CHECK(std::isfinite(r.claim1_constant()));
    CHECK_THROWS_AS(check_claims_p(mu, mu2, nu, 1.5), ArgumentError);
}

TEST_CASE("boundary distortion exponents") {
    MoriReport id = mori_profile(solve_disk(F("zero")));
    REQUIRE(id.status == "ok");
    CHECK(id.lower == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(id.upper == doctest::Approx(1.0).epsilon(1e-3));
    MoriReport v = mori_profile(solve_disk(F("vanish:0.2")));
    CHECK(v.lower >= 0.85);
    CHECK(v.upper <= 1.15);
    CHECK(v.within_mori);
    MoriReport s = mori_profile(solve_disk(F("stretch:2")));
    CHECK(s.K == doctest::Approx(2.0));
    CHECK(s.lower >= 0.5);
    CHECK(s.upper <= 2.0);
    CHECK(s.within_mori);
    GridSpec thin = GridSpec::standard(128, 0.2, 0.7, 9, 4.0, 1, 0.1);
    CHECK(mori_profile(solve_disk(fixtures::field("zero", thin)), 3).status == "indeterminate");
}
