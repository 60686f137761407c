#include "teich/cli.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "teich/acceptance.hpp"
#include "teich/errors.hpp"
#include "teich/extensions.hpp"
#include "teich/fixtures.hpp"
#include "teich/foliation.hpp"
#include "teich/io.hpp"

namespace teich::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string grid, config, out = "teich_out";
    std::string fixture, nu, space, form, germ, kind = "bers", mobius = "hyperbolic:0.5";
    double tol = NAN, p = 2.0, alpha = 0.5, r_target = 0.0;
    int bands = 3;
    bool json = false, csv = false;
    std::vector<int> only;
};

struct Context {
    GridSpec spec;
    Config cfg;
    fs::path out;
    bool json = false;
    bool csv = false;
    std::ostream& os;
};

// Bad fixture names and parameters are usage errors, not numerical ones.
template <class F>
auto resolve(F&& f) {
    try {
        return f();
    } catch (const ArgumentError& e) {
        throw UsageError(e.what());
    }
}

GridSpec load_grid(const std::string& g) {
    if (g.empty()) return GridSpec::standard();
    if (std::all_of(g.begin(), g.end(), ::isdigit)) return GridSpec::standard(std::stoi(g));
    GridSpec s = GridSpec::from_json(io::read_json(g));
    s.validate();
    return s;
}

void print_scalars(std::ostream& os, const json& j, const std::string& prefix = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_object()) {
            if (prefix.empty()) print_scalars(os, *it, it.key() + ".");
        } else if (!it->is_array()) {
            os << prefix << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
        }
    }
}

void emit(const Context& c, const std::string& stem, const json& report) {
    io::write_json(c.out / (stem + ".json"), report);
    if (c.json)
        c.os << report.dump(2) << "\n";
    else
        print_scalars(c.os, report);
}

json header(const Context& c, const std::string& command) {
    return {{"command", command}, {"grid_hash", c.spec.hash()}};
}

std::string profile_csv(const std::vector<DecayBand>& p) {
    std::ostringstream s;
    s.precision(17);
    s << "offset,value\n";
    for (const auto& b : p) s << b.offset << "," << b.value << "\n";
    return s.str();
}

void require(const std::string& v, const char* flag) {
    if (v.empty()) throw UsageError(std::string("missing required flag ") + flag);
}

int cmd_solve(const Context& c, const Options& o) {
    require(o.fixture, "--fixture");
    if (o.kind != "bers" && o.kind != "disk") throw UsageError("--kind must be bers or disk");
    BeltramiField mu = resolve([&] { return fixtures::field(o.fixture, c.spec); });
    SolvedMap f = o.kind == "bers" ? solve_bers(mu, c.cfg) : solve_disk(mu, c.cfg);
    io::save_field(mu, c.out, "field");
    io::save_map(f, c.out / "map");
    json r = header(c, "solve");
    r["fixture"] = o.fixture;
    r["kind"] = to_string(f.kind());
    r["dbar_residual"] = f.dbar_residual();
    r["neumann_terms"] = f.neumann_terms();
    r["sup_norm"] = sup_norm(mu);
    emit(c, "solve", r);
    return ok;
}

int cmd_embed(const Context& c, const Options& o) {
    require(o.fixture, "--fixture");
    BeltramiField mu = resolve([&] { return fixtures::field(o.fixture, c.spec); });
    QuadraticForm phi = bers_projection(mu, c.cfg);
    io::save_form(phi, c.out, "form", c.cfg);
    json r = header(c, "embed");
    r["fixture"] = o.fixture;
    r["form"] = form_report(phi, c.cfg);
    if (c.csv) io::write_text(c.out / "form_profile.csv", profile_csv(b0_decay_profile(phi)));
    emit(c, "embed", r);
    return ok;
}

bool form_in_space(const QuadraticForm& phi, const Space& s, const Config& cfg) {
    switch (s.kind) {
        case SpaceKind::B0: return profile_vanishes(b0_decay_profile(phi), cfg);
        case SpaceKind::Ap: return !a_p_norm(phi, s.param, cfg).infinite;
        case SpaceKind::B0alpha: return !b0_alpha_norm(phi, s.param, cfg).infinite;
        case SpaceKind::B0posAlpha: return decay_exponent(phi, cfg).alpha_hat >= s.param + cfg.exponent_margin;
    }
    return false;
}

int cmd_norm(const Context& c, const Options& o) {
    if (o.fixture.empty() == o.form.empty()) throw UsageError("norm needs exactly one of --fixture or --form");
    std::optional<Space> space;
    if (!o.space.empty()) space = resolve([&] { return Space::parse(o.space); });
    json r = header(c, "norm");
    bool member = true;
    if (!o.fixture.empty()) {
        BeltramiField mu = resolve([&] { return fixtures::field(o.fixture, c.spec); });
        r["fixture"] = o.fixture;
        r["sup_norm"] = sup_norm(mu);
        r["p"] = o.p;
        r["p_norm"] = p_norm(mu, o.p, c.cfg).to_json();
        r["alpha"] = o.alpha;
        r["holder_weighted_norm"] = holder_weighted_norm(mu, o.alpha, c.cfg).to_json();
        VanishingResult v = vanishing_profile(mu, c.cfg);
        r["vanishing_profile"] = v.band_maxima;
        r["vanishes"] = v.vanishes;
        if (space) member = field_in_space(mu, *space, c.cfg).first;
    } else {
        QuadraticForm phi = resolve([&] { return fixtures::form(o.form, c.spec); });
        r["form_fixture"] = o.form;
        r["form"] = form_report(phi, c.cfg);
        r["p"] = o.p;
        r["a_p_norm"] = a_p_norm(phi, o.p, c.cfg).to_json();
        r["alpha"] = o.alpha;
        r["b0_alpha_norm"] = b0_alpha_norm(phi, o.alpha, c.cfg).to_json();
        if (space) member = form_in_space(phi, *space, c.cfg);
    }
    if (space) {
        r["space"] = space->to_string();
        r["verdict"] = member ? "member" : "not_member";
    }
    emit(c, "norm", r);
    return member ? ok : verdict_failure;
}

int cmd_coset(const Context& c, const Options& o) {
    require(o.fixture, "--fixture");
    require(o.nu, "--nu");
    require(o.space, "--space");
    BeltramiField mu = resolve([&] { return fixtures::field(o.fixture, c.spec); });
    BeltramiField nu = resolve([&] { return fixtures::field(o.nu, c.spec); });
    Space space = resolve([&] { return Space::parse(o.space); });
    json r = header(c, "coset");
    r["mu"] = o.fixture;
    r["nu"] = o.nu;
    auto [in, norm] = field_in_space(mu, space, c.cfg);
    if (!in) {
        r["space"] = space.to_string();
        r["input_norm"] = std::isfinite(norm) ? json(norm) : json("inf");
        r["verdict"] = "rejected";
        emit(c, "coset", r);
        return verdict_failure;
    }
    CosetReport rep = coset_residual(mu, nu, space, c.cfg);
    r["report"] = rep.to_json();
    r["verdict"] = rep.pass ? "pass" : "fail";
    if (c.csv) io::write_text(c.out / "delta_profile.csv", profile_csv(rep.delta_profile));
    emit(c, "coset", r);
    return rep.pass ? ok : verdict_failure;
}

int cmd_mori(const Context& c, const Options& o) {
    require(o.fixture, "--fixture");
    BeltramiField nu = resolve([&] { return fixtures::field(o.fixture, c.spec); });
    MoriReport m = mori_profile(solve_disk(nu, c.cfg), o.bands, c.cfg);
    json r = header(c, "mori");
    r["fixture"] = o.fixture;
    r["report"] = m.to_json();
    r["verdict"] = m.status != "ok" ? "indeterminate" : (m.within_mori ? "pass" : "fail");
    emit(c, "mori", r);
    if (m.status != "ok") return numerical_error;
    return m.within_mori ? ok : verdict_failure;
}

int cmd_extend(const Context& c, const Options& o) {
    require(o.fixture, "--fixture");
    CircleMap g = resolve([&] { return fixtures::circle(o.fixture); });
    RegularityReport reg = classify_regularity(g, c.spec, c.cfg);
    json r = header(c, "extend");
    r["fixture"] = o.fixture;
    r["regularity"] = reg.to_json();
    r["verdict"] = reg.coherent ? "coherent" : "incoherent";
    if (c.csv) {
        BarycentricExtension e = barycentric_extension(g, c.spec);
        io::write_text(c.out / "extension.csv", e.values.to_csv());
        io::write_text(c.out / "extension_mu.csv", e.mu.samples().to_csv());
        io::write_text(c.out / "form_profile.csv", profile_csv(reg.form_profile));
    }
    emit(c, "extend", r);
    return reg.coherent ? ok : verdict_failure;
}

int cmd_aw(const Context& c, const Options& o) {
    require(o.form, "--form");
    QuadraticForm phi = resolve([&] { return fixtures::form(o.form, c.spec); });
    BeltramiField mu = ahlfors_weill(phi);
    double err = b_norm(bers_projection(mu, c.cfg) - phi);
    json r = header(c, "aw");
    r["form_fixture"] = o.form;
    r["b_norm"] = b_norm(phi);
    r["section_sup"] = sup_norm(mu);
    r["pointwise_ratio"] = aw_pointwise_ratio(phi, mu);
    r["round_trip"] = err;
    r["tolerance"] = c.cfg.round_trip_tol;
    bool pass = err < c.cfg.round_trip_tol;
    r["verdict"] = pass ? "pass" : "fail";
    if (c.csv) io::save_field(mu, c.out, "section");
    emit(c, "aw", r);
    return pass ? ok : verdict_failure;
}

int cmd_linearize(const Context& c, const Options& o) {
    if (o.fixture.empty() == o.germ.empty()) throw UsageError("linearize needs exactly one of --fixture or --germ");
    Germ1D g = o.fixture.empty() ? io::load_germ(o.germ, o.alpha)
                                 : resolve([&] { return fixtures::germ(o.fixture); });
    GermNormalization n = normalize_germ(g);
    double tol = std::isnan(o.tol) ? 1e-10 : o.tol;
    Linearization L = sternberg_linearize(n.germ, tol, c.cfg);
    json r = header(c, "linearize");
    r["germ"] = o.fixture.empty() ? o.germ : o.fixture;
    r["inverted"] = n.inverted;
    r["tol"] = tol;
    r["report"] = L.to_json();
    if (c.csv) {
        std::ostringstream s;
        s.precision(17);
        s << "x,h\n";
        for (std::size_t k = 0; k < L.x.size(); ++k) s << L.x[k] << "," << L.h[k] << "\n";
        io::write_text(c.out / "linearization.csv", s.str());
    }
    emit(c, "linearize", r);
    return ok;
}

int cmd_conjugate(const Context& c, const Options& o) {
    require(o.fixture, "--fixture");
    CircleMap f = resolve([&] { return fixtures::circle(o.fixture); });
    MobiusMap gamma = resolve([&] { return fixtures::mobius(o.mobius); });
    CircleMap g2 = conjugate_circle(f, gamma);
    io::write_text(c.out / "conjugate.csv", io::circle_to_csv(g2));
    RegularityReport reg = classify_regularity(g2, c.spec, c.cfg);
    json r = header(c, "conjugate");
    r["fixture"] = o.fixture;
    r["mobius"] = o.mobius;
    r["gamma"] = gamma.to_json();
    r["regularity"] = reg.to_json();
    int code = ok;
    if (o.r_target > 0.0) {
        PromotionReport p = promotion_experiment(f, gamma, o.r_target, c.cfg);
        r["promotion"] = p.to_json();
        r["verdict"] = p.status;
        if (p.status != "ok") code = verdict_failure;
    }
    emit(c, "conjugate", r);
    return code;
}

int cmd_suite(const Context& c, const Options& o) {
    for (int id : o.only)
        if (id < 1 || id > acceptance::criterion_count) throw UsageError("no acceptance criterion " + std::to_string(id));
    auto results = acceptance::run(c.spec, c.cfg, o.only);
    json summary = acceptance::summary_json(results, c.spec);
    io::write_json(c.out / "suite.json", summary);
    if (c.json) {
        c.os << summary.dump(2) << "\n";
    } else {
        for (const auto& r : results) c.os << acceptance::format_line(r) << "\n";
    }
    return summary["verdict"] == "pass" ? ok : verdict_failure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical toolkit for universal Teichmüller space", "teich"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--grid", o.grid, "GridSpec JSON file, or an angular resolution for the standard grid");
    app.add_option("--config", o.config, "JSON file of tolerance and threshold overrides");
    app.add_option("--tol", o.tol, "solver tolerance (linearization tolerance for linearize)");
    app.add_option("--out", o.out, "artifact directory")->capture_default_str();
    app.add_flag("--json", o.json, "print the full JSON report");
    app.add_flag("--csv", o.csv, "also write CSV series");
    app.fallthrough();

    auto* solve = app.add_subcommand("solve", "solve the Beltrami equation for a field fixture");
    solve->add_option("--fixture", o.fixture, "field fixture");
    solve->add_option("--kind", o.kind, "bers or disk")->capture_default_str();
    auto* embed = app.add_subcommand("embed", "Bers projection of a field fixture");
    embed->add_option("--fixture", o.fixture, "field fixture");
    auto* norm = app.add_subcommand("norm", "norms of a field or form fixture");
    norm->add_option("--fixture", o.fixture, "field fixture");
    norm->add_option("--form", o.form, "form fixture");
    norm->add_option("--space", o.space, "B0, Ap:p, B0alpha:a or B0posAlpha:a");
    norm->add_option("--p", o.p, "integrability exponent")->capture_default_str();
    norm->add_option("--alpha", o.alpha, "Hölder exponent")->capture_default_str();
    auto* coset = app.add_subcommand("coset", "coset inclusion diagnostic");
    coset->add_option("--fixture", o.fixture, "field fixture mu");
    coset->add_option("--nu", o.nu, "base point field fixture");
    coset->add_option("--space", o.space, "B0, Ap:p, B0alpha:a or B0posAlpha:a");
    auto* mori = app.add_subcommand("mori", "boundary distortion exponents of the disk solution");
    mori->add_option("--fixture", o.fixture, "field fixture nu");
    mori->add_option("--bands", o.bands, "finest annuli used")->capture_default_str();
    auto* extend = app.add_subcommand("extend", "barycentric extension and regularity report");
    extend->add_option("--fixture", o.fixture, "circle map fixture");
    auto* aw = app.add_subcommand("aw", "Ahlfors-Weill section round trip");
    aw->add_option("--form", o.form, "form fixture");
    auto* lin = app.add_subcommand("linearize", "Sternberg linearization of a germ");
    lin->add_option("--fixture", o.fixture, "germ fixture");
    lin->add_option("--germ", o.germ, "two-column germ CSV");
    lin->add_option("--alpha", o.alpha, "Hölder exponent for CSV germs")->capture_default_str();
    auto* conj = app.add_subcommand("conjugate", "conjugate a Möbius map by a circle map");
    conj->add_option("--fixture", o.fixture, "circle map fixture");
    conj->add_option("--mobius", o.mobius, "Möbius fixture")->capture_default_str();
    conj->add_option("--r-target", o.r_target, "run the promotion experiment at this regularity");
    auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
    suite->add_option("--only", o.only, "criterion ids")->delimiter(',');

    std::vector<std::string> argv_store{"teich"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        Context c{load_grid(o.grid), o.config.empty() ? default_config() : Config::from_json(io::read_json(o.config)),
                  o.out, o.json, o.csv, out};
        if (!std::isnan(o.tol)) {
            if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
            c.cfg.solver_tol = o.tol;
        }
        fs::create_directories(c.out);
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "solve") return cmd_solve(c, o);
        if (name == "embed") return cmd_embed(c, o);
        if (name == "norm") return cmd_norm(c, o);
        if (name == "coset") return cmd_coset(c, o);
        if (name == "mori") return cmd_mori(c, o);
        if (name == "extend") return cmd_extend(c, o);
        if (name == "aw") return cmd_aw(c, o);
        if (name == "linearize") return cmd_linearize(c, o);
        if (name == "conjugate") return cmd_conjugate(c, o);
        if (name == "suite") return cmd_suite(c, o);
        throw UsageError("unknown subcommand " + name);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return numerical_error;
    }
}

}  // namespace teich::cli
