#include <filesystem>

#include "support.hpp"
#include "teich/errors.hpp"
#include "teich/fixtures.hpp"
#include "teich/io.hpp"

using namespace teich;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("teich_io_" + name);
    fs::remove_all(p);
    return p;
}
}  // namespace

TEST_CASE("json and text") {
    fs::path d = scratch("json");
    nlohmann::json j{{"b", 2}, {"a", {1.5, 2.5}}};
    io::write_json(d / "x.json", j);
    CHECK(io::read_json(d / "x.json") == j);
    CHECK(io::read_text(d / "x.json").find("\"a\"") < io::read_text(d / "x.json").find("\"b\""));
    CHECK_THROWS(io::read_text(d / "missing.txt"));
}

TEST_CASE("field round trip") {
    fs::path d = scratch("field");
    BeltramiField mu = fixtures::field("poly:2:0.3", test::coarse());
    io::save_field(mu, d, "mu");
    CHECK(fs::exists(d / "mu.csv"));
    CHECK(fs::exists(d / "mu.json"));
    BeltramiField back = io::load_field(test::coarse(), d, "mu");
    CHECK(back.samples().values() == mu.samples().values());
    CHECK(back.content_hash() == mu.content_hash());
    CHECK_THROWS_AS(io::load_field(test::grid(), d, "mu"), ConsistencyError);
}

TEST_CASE("solved map round trip") {
    fs::path d = scratch("map");
    BeltramiField mu = fixtures::field("const:0.1", test::coarse());
    SolvedMap f = solve_disk(mu);
    io::save_map(f, d);
    SolvedMap g = io::load_map(mu, d);
    CHECK(g.kind() == f.kind());
    CHECK(g.forward_inner().values() == f.forward_inner().values());
    CHECK(g.boundary() == f.boundary());
    for (cplx z : {cplx(0.3, 0.2), cplx(-0.7, 0.1)}) CHECK(std::abs(g.evaluate(z) - f.evaluate(z)) < 1e-14);
    CHECK_THROWS_AS(io::load_map(fixtures::field("const:0.2", test::coarse()), d), ConsistencyError);
}

TEST_CASE("form round trip") {
    fs::path d = scratch("form");
    QuadraticForm phi = fixtures::form("random:6:0.25", test::coarse());
    io::save_form(phi, d, "phi");
    QuadraticForm back = io::load_form(test::coarse(), d, "phi");
    CHECK(back.near().values() == phi.near().values());
    CHECK(back.far().values() == phi.far().values());
    CHECK(back.at_infinity() == phi.at_infinity());
    // the exact evaluator is not stored, so refinement falls back to interpolation
    CHECK(b_norm(back) == doctest::Approx(b_norm(phi)).epsilon(1e-3));
    CHECK(io::read_json(d / "phi.json").contains("b_norm"));
}

TEST_CASE("germ and circle csv") {
    fs::path d = scratch("germ");
    Germ1D g = fixtures::germ("quadratic:0.5:0.1");
    io::save_germ(g, d / "g.csv");
    Germ1D back = io::load_germ(d / "g.csv", g.alpha());
    CHECK(back.values() == g.values());
    CircleMap c = fixtures::circle("ellipse:0.1", 256);
    CircleMap cb = io::circle_from_csv(io::circle_to_csv(c));
    CHECK(cb.lift_samples() == c.lift_samples());
    CHECK(cb.derivative_samples() == c.derivative_samples());
    CHECK(io::circle_to_csv(c).rfind("theta,lift,derivative\n", 0) == 0);
}
