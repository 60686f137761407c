#include "teich/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "teich/errors.hpp"

namespace teich::io {

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ArgumentError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + p.string());
    out << text;
}

nlohmann::json read_json(const fs::path& p) {
    try {
        return nlohmann::json::parse(read_text(p));
    } catch (const nlohmann::json::parse_error& e) {
        throw ArgumentError("malformed JSON in " + p.string() + ": " + e.what());
    }
}

void write_json(const fs::path& p, const nlohmann::json& j) { write_text(p, j.dump(2) + "\n"); }

void save_field(const BeltramiField& mu, const fs::path& dir, const std::string& stem) {
    write_text(dir / (stem + ".csv"), mu.samples().to_csv());
    write_text(dir / (stem + ".json"), mu.sidecar_json() + "\n");
}

BeltramiField load_field(const GridSpec& spec, const fs::path& dir, const std::string& stem) {
    auto side = read_json(dir / (stem + ".json"));
    if (side.value("grid_hash", std::string()) != spec.hash())
        throw ConsistencyError("field " + stem + " was sampled on a different grid");
    return BeltramiField(ComplexGridFunction::from_csv(spec, Chart::disk, read_text(dir / (stem + ".csv"))));
}

void save_map(const SolvedMap& f, const fs::path& dir) {
    write_text(dir / "inner.csv", f.forward_inner().to_csv());
    write_text(dir / "outer.csv", f.forward_outer().to_csv());
    write_json(dir / "meta.json", f.metadata());
}

SolvedMap load_map(const BeltramiField& source, const fs::path& dir) {
    const GridSpec& spec = source.spec();
    auto inner = ComplexGridFunction::from_csv(spec, Chart::disk, read_text(dir / "inner.csv"));
    auto outer = ComplexGridFunction::from_csv(spec, Chart::exterior, read_text(dir / "outer.csv"));
    return SolvedMap::from_files(source, read_json(dir / "meta.json"), inner, outer);
}

void save_form(const QuadraticForm& phi, const fs::path& dir, const std::string& stem, const Config& cfg) {
    write_text(dir / (stem + "_near.csv"), phi.near().to_csv());
    write_text(dir / (stem + "_far.csv"), phi.far().to_csv());
    nlohmann::json j = form_report(phi, cfg);
    j["at_infinity"] = {phi.at_infinity().real(), phi.at_infinity().imag()};
    j["grid_hash"] = phi.spec().hash();
    write_json(dir / (stem + ".json"), j);
}

QuadraticForm load_form(const GridSpec& spec, const fs::path& dir, const std::string& stem) {
    auto j = read_json(dir / (stem + ".json"));
    if (j.value("grid_hash", std::string()) != spec.hash())
        throw ConsistencyError("form " + stem + " was sampled on a different grid");
    auto near = ComplexGridFunction::from_csv(spec, Chart::exterior, read_text(dir / (stem + "_near.csv")));
    auto far = ComplexGridFunction::from_csv(spec, Chart::far, read_text(dir / (stem + "_far.csv")));
    cplx inf{j.at("at_infinity").at(0).get<double>(), j.at("at_infinity").at(1).get<double>()};
    return QuadraticForm(std::move(near), std::move(far), inf);
}

void save_germ(const Germ1D& g, const fs::path& p) { write_text(p, g.to_csv()); }

Germ1D load_germ(const fs::path& p, double alpha) { return Germ1D::from_csv(read_text(p), alpha); }

std::string circle_to_csv(const CircleMap& g) {
    std::string out = "theta,lift,derivative\n";
    char buf[96];
    for (int i = 0; i < g.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.spacing() * i, g.lift_samples()[i],
                      g.derivative_samples()[i]);
        out += buf;
    }
    return out;
}

CircleMap circle_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line.rfind("theta", 0) != 0) throw ArgumentError("circle csv header missing");
    std::vector<double> lift, deriv;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double t = 0, g = 0, d = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &g, &d) != 3) throw ArgumentError("bad circle csv row: " + line);
        lift.push_back(g);
        deriv.push_back(d);
    }
    return CircleMap(std::move(lift), std::move(deriv));
}

}  // namespace teich::io
