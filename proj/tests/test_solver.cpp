#include "support.hpp"
#include "teich/errors.hpp"
#include "teich/fixtures.hpp"
#include "teich/solver.hpp"

using namespace teich;

namespace {
BeltramiField F(const std::string& name) { return fixtures::field(name, test::grid()); }

template <class Fn>
double sup_err(const ComplexGridFunction& g, Fn exact) {
    double e = 0.0;
    for (int j = 0; j < g.circles(); ++j)
        for (int i = 0; i < g.n(); ++i) e = std::max(e, std::abs(g.at(j, i) - exact(g.point(j, i))));
    return e;
}
}  // namespace

TEST_CASE("zero coefficient gives the identity") {
    SolvedMap f = solve_bers(F("zero"));
    CHECK(f.dbar_residual() == 0.0);
    CHECK(sup_err(f.forward_inner(), [](cplx z) { return z; }) < 1e-14);
    CHECK(sup_err(f.forward_outer(), [](cplx z) { return z; }) < 1e-14);
    SolvedMap d = solve_disk(F("zero"));
    CHECK(std::abs(d.evaluate(cplx(0.3, 0.4)) - cplx(0.3, 0.4)) < 1e-12);
    CHECK(std::abs(d.inverse_evaluate(cplx(0.3, 0.4)) - cplx(0.3, 0.4)) < 1e-12);
}

TEST_CASE("constant coefficient bers map") {
    const double k = 0.1;
    SolvedMap f = solve_bers(F("const:0.1"));
    CHECK(sup_err(f.forward_inner(), [k](cplx z) { return z + k * std::conj(z); }) < 1e-4);
    CHECK(sup_err(f.forward_outer(), [k](cplx z) { return z + k / z; }) < 1e-4);
    CHECK(std::abs(f.laurent().at(0) - k) < 1e-4);
    CHECK(f.dbar_residual() < 1e-6);
    for (std::size_t k2 = 1; k2 < f.increments().size(); ++k2) CHECK(f.increments()[k2] <= f.increments()[k2 - 1] * 1.0001);
    cplx w = f.evaluate(2.0);
    CHECK(std::abs(w - 2.05) < 1e-6);
    CHECK(std::abs(f.inverse_evaluate(2.05) - 2.0) < 1e-8);
    cplx z(0.3, -0.5);
    CHECK(std::abs(f.dz(z) - 1.0) < 1e-3);
    CHECK(std::abs(f.dzbar(z) - k) < 1e-3);
}

TEST_CASE("radial stretch") {
    SolvedMap f = solve_bers(F("stretch:2"));
    CHECK(sup_err(f.forward_inner(), [](cplx z) { return z * std::abs(z); }) < 1e-3);
    CHECK(sup_err(f.forward_outer(), [](cplx z) { return z; }) < 1e-3);
    SolvedMap d = solve_disk(F("stretch:2"));
    CHECK(d.boundary_map(512).sup_distance(CircleMap::identity(512)) < 1e-6);
    CHECK(std::abs(d.evaluate(0.5) - 0.25) < 1e-3);
}

TEST_CASE("disk self-map of a constant coefficient") {
    SolvedMap d = solve_disk(F("const:0.1"));
    CircleMap g = d.boundary_map(1024);
    CHECK(g.certify_monotone());
    for (double t : {0.0, pi / 2, pi}) CHECK(std::abs(g.apply(std::polar(1.0, t)) - std::polar(1.0, t)) < 1e-8);
    double lo = INFINITY;
    for (double v : g.derivative_samples()) lo = std::min(lo, v);
    CHECK(lo > 0.0);
    CHECK_THROWS_AS(d.evaluate(1.5), ChartError);
    for (cplx z : {cplx(0.2, 0.1), cplx(-0.6, 0.5), cplx(0.0, -0.9)}) CHECK(std::abs(d.inverse_evaluate(d.evaluate(z)) - z) < 1e-9);
}

TEST_CASE("dilatation and budget") {
    CHECK(maximal_dilatation(F("zero")) == 1.0);
    CHECK(maximal_dilatation(F("stretch:2")) == doctest::Approx(2.0));
    CHECK(maximal_dilatation(F("const:0.5")) == doctest::Approx(3.0));
    CHECK_THROWS_AS(solve_bers(F("const:0.97")), BudgetError);
    CHECK_THROWS_AS(solve_disk(F("const:0.97")), BudgetError);
}

TEST_CASE("solutions are deterministic") {
    auto mu = F("poly:5:0.3");
    SolvedMap a = solve_bers(mu), b = solve_bers(mu);
    CHECK(a.forward_inner().values() == b.forward_inner().values());
    CHECK(a.metadata() == b.metadata());
}

TEST_CASE("polar derivatives") {
    const auto& g = test::grid();
    ComplexGridFunction f(g, Chart::disk);
    for (int j = 0; j < f.circles(); ++j)
        for (int i = 0; i < f.n(); ++i) {
            cplx z = f.point(j, i);
            f.at(j, i) = z * z * std::conj(z);
        }
    auto d = polar_derivatives(f.radii(), g.n_theta, f.values());
    double e1 = 0.0, e2 = 0.0;
    for (int j = 1; j < f.circles() - 1; ++j)
        for (int i = 0; i < f.n(); ++i) {
            cplx z = f.point(j, i);
            std::size_t k = static_cast<std::size_t>(j) * f.n() + i;
            e1 = std::max(e1, std::abs(d.dz[k] - 2.0 * z * std::conj(z)));
            e2 = std::max(e2, std::abs(d.dzbar[k] - z * z));
        }
    CHECK(e1 < 1e-5);
    CHECK(e2 < 1e-5);
}

TEST_CASE("reflected dilatation") {
    auto mu = F("const:0.2");
    cplx z(0.5, 0.5);
    cplx zs = 1.0 / std::conj(z);
    cplx expect = std::conj(cplx(0.2)) * z * z / (std::conj(z) * std::conj(z));
    CHECK(std::abs(reflected_dilatation(mu, zs) - expect) < 1e-12);
}
