#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "teich/cli.hpp"
#include "teich/io.hpp"

using namespace teich;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& dir = "cli") {
    fs::path out = fs::temp_directory_path() / ("teich_cli_" + dir);
    args.insert(args.begin(), {"--out", out.string(), "--grid", "128"});
    std::ostringstream o, e;
    int code = cli::run(args, o, e);
    return {code, o.str(), e.str()};
}

fs::path outdir(const std::string& dir = "cli") { return fs::temp_directory_path() / ("teich_cli_" + dir); }

}  // namespace

TEST_CASE("usage errors exit 64") {
    CHECK(run({"frobnicate"}).code == 64);
    CHECK(run({}).code == 64);
    CHECK(run({"solve"}).code == 64);
    CHECK(run({"solve", "--fixture", "nosuch:1"}).code == 64);
    CHECK(run({"solve", "--fixture", "zero", "--kind", "other"}).code == 64);
    CHECK(run({"norm", "--fixture", "zero", "--form", "zero"}).code == 64);
    CHECK(run({"suite", "--only", "11"}).code == 64);
    CHECK(run({"solve", "--fixture", "zero", "--bogus"}).code == 64);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("numerical errors exit 3") {
    Run r = run({"solve", "--fixture", "const:0.97"});
    CHECK(r.code == 3);
    CHECK(r.err.find("numerical error") != std::string::npos);
}

TEST_CASE("solve writes artifacts") {
    Run r = run({"solve", "--fixture", "const:0.1", "--kind", "disk"});
    CHECK(r.code == 0);
    CHECK(fs::exists(outdir() / "solve.json"));
    CHECK(fs::exists(outdir() / "map" / "meta.json"));
    CHECK(fs::exists(outdir() / "field.csv"));
    CHECK(r.out.find("dbar_residual") != std::string::npos);
}

TEST_CASE("embed reports the B-norm") {
    Run r = run({"embed", "--fixture", "const:0.1", "--json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["form"]["b_norm"].get<double>() >= 0.149);
    CHECK(j["command"] == "embed");
}

TEST_CASE("norm verdicts") {
    CHECK(run({"norm", "--fixture", "vanish:0.1", "--space", "B0"}).code == 0);
    CHECK(run({"norm", "--fixture", "const:0.1", "--space", "B0"}).code == 2);
    CHECK(run({"norm", "--form", "constant:0.1", "--space", "B0"}).code == 0);
    Run r = run({"norm", "--fixture", "vanish:0.1", "--p", "2", "--json"});
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["p_norm"]["value"].get<double>() == doctest::Approx(0.04 * pi).epsilon(2e-3));
}

TEST_CASE("coset rejection and pass") {
    Run rej = run({"coset", "--fixture", "const:0.2", "--nu", "poly:7:0.2", "--space", "B0"});
    CHECK(rej.code == 2);
    CHECK(rej.out.find("rejected") != std::string::npos);
    Run ok = run({"coset", "--fixture", "vanish:0.2", "--nu", "poly:7:0.2", "--space", "B0"});
    CHECK(ok.code == 0);
}

TEST_CASE("linearize") {
    Run r = run({"linearize", "--fixture", "quadratic:0.5:0.1", "--json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["taylor2"].get<double>() == doctest::Approx(0.4).epsilon(1e-2));
    CHECK_FALSE(j["inverted"].get<bool>());
    Run inv = run({"linearize", "--fixture", "linear:2", "--json"});
    REQUIRE(inv.code == 0);
    CHECK(nlohmann::json::parse(inv.out)["inverted"].get<bool>());
}

TEST_CASE("aw, mori, extend and conjugate") {
    CHECK(run({"aw", "--form", "random:1:0.2"}).code == 0);
    CHECK(run({"aw", "--form", "random:1:0.7"}).code == 3);
    CHECK(run({"mori", "--fixture", "vanish:0.2"}).code == 0);
    CHECK(run({"extend", "--fixture", "ellipse:0.1"}).code == 0);
    CHECK(run({"conjugate", "--fixture", "ellipse:0.1", "--r-target", "1.5"}).code == 0);
    CHECK(fs::exists(outdir() / "conjugate.csv"));
}

TEST_CASE("reports are deterministic") {
    run({"embed", "--fixture", "poly:3:0.2"}, "det1");
    run({"embed", "--fixture", "poly:3:0.2"}, "det2");
    CHECK(io::read_text(outdir("det1") / "embed.json") == io::read_text(outdir("det2") / "embed.json"));
}

TEST_CASE("grid and config files") {
    fs::path d = outdir("files");
    fs::create_directories(d);
    io::write_json(d / "grid.json", GridSpec::standard(64).to_json());
    Config cfg = default_config();
    cfg.vanish_eps0 = 1e-6;
    io::write_json(d / "cfg.json", cfg.to_json());
    std::ostringstream o, e;
    int code = cli::run({"--grid", (d / "grid.json").string(), "--config", (d / "cfg.json").string(), "--out",
                         d.string(), "norm", "--fixture", "vanish:0.1", "--space", "B0"},
                        o, e);
    CHECK(code == 2);
    CHECK(io::read_json(d / "norm.json")["grid_hash"] == GridSpec::standard(64).hash());
}
