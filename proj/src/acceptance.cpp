#include "teich/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "teich/errors.hpp"
#include "teich/extensions.hpp"
#include "teich/fixtures.hpp"
#include "teich/foliation.hpp"

namespace teich::acceptance {

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

CriterionResult start(int id, std::string name) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}

CriterionResult constant_oracle(const GridSpec& spec, const Config& cfg) {
    CriterionResult r = start(1, "constant-coefficient oracle");
    r.pass = true;
    double worst_far = 0.0, worst_near = 0.0, slowest = 0.0;
    for (double k : {0.05, 0.1, 0.2}) {
        auto t0 = std::chrono::steady_clock::now();
        QuadraticForm phi = bers_projection(fixtures::field(fmt("const:%g", k), spec), cfg);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        slowest = std::max(slowest, secs);
        double e_far = 0.0, e_near = 0.0;
        const auto& near = phi.near();
        for (int j = 0; j < near.circles(); ++j)
            for (int i = 0; i < near.n(); ++i) {
                cplx z = near.point(j, i);
                cplx d = z * z - k;
                cplx exact = -6.0 * k / (d * d);
                double e = std::abs(near.at(j, i) - exact) / std::abs(exact);
                double& slot = std::abs(z) >= 1.5 ? e_far : e_near;
                slot = std::max(slot, e);
            }
        const auto& far = phi.far();
        for (int j = 0; j < far.circles(); ++j)
            for (int i = 0; i < far.n(); ++i) {
                cplx w = far.point(j, i);
                cplx d = 1.0 - k * w * w;
                cplx exact = -6.0 * k / (d * d);
                e_far = std::max(e_far, std::abs(far.at(j, i) - exact) / std::abs(exact));
            }
        r.data.push_back({{"k", k}, {"rel_err_far", e_far}, {"rel_err_near", e_near}});
        worst_far = std::max(worst_far, e_far);
        worst_near = std::max(worst_near, e_near);
        r.pass = r.pass && e_far < 1e-3 && e_near < 1e-2 && secs < 60.0;
    }
    r.detail = fmt("rel err |z|>=1.5 %.2e, 1.05<=|z|<1.5 %.2e, each k under 60 s", worst_far, worst_near);
    return r;
}

CriterionResult radial_stretch(const GridSpec& spec, const Config& cfg) {
    CriterionResult r = start(2, "radial-stretch triviality");
    double worst = 0.0;
    for (double K : {1.5, 2.0}) {
        double b = b_norm(bers_projection(fixtures::field(K == 1.5 ? "stretch:1.5" : "stretch:2", spec), cfg));
        r.data.push_back({{"K", K}, {"b_norm", b}});
        worst = std::max(worst, b);
    }
    r.pass = worst < 5e-3;
    r.detail = fmt("max b_norm %.2e (< 5e-3)", worst);
    return r;
}

CriterionResult base2(const GridSpec& spec, const Config& cfg) {
    CriterionResult r = start(3, "pointwise composition bound");
    double worst = -INFINITY;
    for (int t = 0; t < 100; ++t) {
        auto m1 = fixtures::random_field(3 * t + 1, 0.3, spec), m2 = fixtures::random_field(3 * t + 2, 0.3, spec),
             nu = fixtures::random_field(3 * t + 3, 0.3, spec);
        SolvedMap f = solve_disk(nu, cfg);
        worst = std::max(worst, check_base2(m1, m2, nu, f, cfg).max_violation);
    }
    auto zero = BeltramiField::zero(spec);
    SolvedMap id = solve_disk(zero, cfg);
    double ident = 0.0;
    for (int t = 0; t < 5; ++t) {
        auto m1 = fixtures::random_field(1000 + 2 * t, 0.3, spec), m2 = fixtures::random_field(1001 + 2 * t, 0.3, spec);
        ident = std::max(ident, check_base2(m1, m2, zero, id, cfg).identity_residual);
    }
    r.pass = worst <= 5e-3 && ident <= 1e-8;
    r.data = {{"max_violation", worst}, {"identity_residual_nu0", ident}};
    r.detail = fmt("max violation %.2e over 100 triples, identity at nu=0 %.2e", worst, ident);
    return r;
}

CriterionResult base1(const GridSpec& spec, const Config& cfg) {
    CriterionResult r = start(4, "Schwarzian integral bound");
    double worst = 0.0;
    int samples = 0, dropped = 0;
    for (int t = 0; t < 25; ++t) {
        auto mu = fixtures::random_field(500 + 2 * t, 0.3, spec), nu = fixtures::random_field(501 + 2 * t, 0.3, spec);
        Base1Report b = check_base1(mu, nu, cfg);
        worst = std::max(worst, b.max_ratio);
        samples += b.samples;
        dropped += b.dropped;
    }
    r.pass = worst <= 1.0 + 5e-2 && samples > 0;
    r.data = {{"max_ratio", worst}, {"samples", samples}, {"dropped", dropped}};
    r.detail = fmt("max lhs/rhs %.3f over %g samples (%g dropped)", worst, samples, dropped);
    return r;
}

CriterionResult aw_round_trip(const GridSpec& spec, const Config& cfg) {
    CriterionResult r = start(5, "Ahlfors-Weill round trip");
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        double target = 0.05 + 0.04 * t;
        QuadraticForm phi = fixtures::random_form(700 + t, target, spec);
        double err = b_norm(bers_projection(ahlfors_weill(phi), cfg) - phi);
        r.data.push_back({{"b_norm", target}, {"round_trip", err}});
        worst = std::max(worst, err);
    }
    r.pass = worst < 5e-3;
    r.detail = fmt("max b_norm(Phi(aw(phi)) - phi) %.2e over 10 forms, b_norm 0.05..0.41", worst);
    return r;
}

CriterionResult pullback_isometry(const GridSpec& spec, const Config&) {
    CriterionResult r = start(6, "pullback isometry");
    std::mt19937_64 rng(6);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        QuadraticForm phi = fixtures::random_form(900 + t, 0.1 + 0.02 * t, spec);
        MobiusMap g = fixtures::random_mobius(rng, 0.5);
        worst = std::max(worst, std::abs(b_norm(pullback(phi, g)) - b_norm(phi)));
    }
    r.pass = worst < 1e-6;
    r.data = {{"max_difference", worst}};
    r.detail = fmt("max |b_norm(g*phi) - b_norm(phi)| %.2e over 20 pairs", worst);
    return r;
}

CriterionResult coset(const GridSpec& spec, const Config& cfg) {
    CriterionResult r = start(7, "coset inclusion evidence");
    const std::vector<std::pair<std::string, std::string>> families = {{"vanish:0.2", "B0"},
                                                                      {"vanish:0.2", "Ap:2"},
                                                                      {"holder:0.1:0.5", "Ap:4"},
                                                                      {"holder:0.1:0.3", "B0alpha:0.3"},
                                                                      {"holder:0.1:0.5", "B0alpha:0.5"}};
    const std::vector<std::string> bases = {"const:0.2", "poly:7:0.2", "vanish:0.2"};
    r.pass = true;
    int passed = 0, total = 0;
    for (const auto& [mu, space] : families)
        for (const auto& nu : bases) {
            CosetReport c = coset_residual(fixtures::field(mu, spec), fixtures::field(nu, spec), Space::parse(space), cfg);
            nlohmann::json j = c.to_json();
            j["mu"] = mu;
            j["nu"] = nu;
            r.data.push_back(j);
            r.pass = r.pass && c.pass;
            passed += c.pass;
            ++total;
        }
    r.detail = fmt("%g/%g family x base point cases pass", passed, total);
    return r;
}

CriterionResult mori(const GridSpec& spec, const Config& cfg) {
    CriterionResult r = start(8, "distortion exponents");
    struct Case {
        const char* nu;
        bool vanishing;
    };
    const Case cases[] = {{"zero", true},       {"stretch:1.5", false}, {"stretch:2", false},
                          {"const:0.2", false}, {"poly:7:0.2", false},  {"vanish:0.2", true},
                          {"holder:0.1:0.5", true}};
    r.pass = true;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& c : cases) {
        MoriReport m = mori_profile(solve_disk(fixtures::field(c.nu, spec), cfg), 3, cfg);
        bool ok = m.status == "ok" && m.within_mori;
        if (c.vanishing) ok = ok && m.lower >= 0.85 && m.upper <= 1.15;
        nlohmann::json j = m.to_json();
        j["nu"] = c.nu;
        r.data.push_back(j);
        r.pass = r.pass && ok;
        lo = std::min(lo, m.lower);
        hi = std::max(hi, m.upper);
    }
    r.detail = fmt("exponents in [%.3f, %.3f] over 7 base fields", lo, hi);
    return r;
}

CriterionResult sternberg(const GridSpec&, const Config& cfg) {
    CriterionResult r = start(9, "Sternberg linearization");
    Germ1D g = fixtures::germ("quadratic:0.5:0.1");
    Linearization L = sternberg_linearize(g, 1e-10, cfg);
    std::vector<double> xs;
    for (int k = -50; k <= 50; ++k) xs.push_back(0.5 * L.delta * k / 50.0);
    KoenigsResult K = koenigs_oracle(g, 40, xs);
    double koenigs = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) koenigs = std::max(koenigs, std::abs(K.h[k] - L(xs[k])));

    Linearization L2 = sternberg_linearize(g, 1e-10, cfg, 0.5 * L.delta);
    double overlap = 0.0;
    for (int k = -200; k <= 200; ++k) {
        double x = L2.delta * k / 200.0;
        overlap = std::max(overlap, std::abs(L(x) - L2(x)));
    }
    r.pass = L.residual <= 1e-8 && std::abs(L.taylor2 - 0.4) <= 1e-3 && koenigs <= 1e-6 && !K.partial &&
             L.contraction_factor <= L.bound + 0.05 && overlap <= 1e-8;
    r.data = L.to_json();
    r.data["koenigs_difference"] = koenigs;
    r.data["uniqueness_overlap"] = overlap;
    r.detail = fmt("residual %.1e, taylor2 %.6f, Koenigs %.1e", L.residual, L.taylor2, koenigs) +
               fmt(", factor %.3f <= bound %.3f, overlap %.1e", L.contraction_factor, L.bound, overlap);
    return r;
}

CriterionResult barycentric(const GridSpec& spec, const Config&) {
    CriterionResult r = start(10, "barycentric extension");
    MobiusMap m = fixtures::mobius("translation:0.3:-0.2") * MobiusMap::rotation(0.7);
    BarycentricExtension e = barycentric_extension(CircleMap::from_mobius(m), spec);
    double repro = 0.0;
    for (int j = 0; j < e.values.circles(); ++j)
        for (int i = 0; i < e.values.n(); ++i)
            repro = std::max(repro, std::abs(e.values.at(j, i) - m(e.values.point(j, i))));

    std::mt19937_64 rng(10);
    const CircleMap shapes[] = {fixtures::circle("ellipse:0.1"), fixtures::circle("cusp:0.5")};
    double natural = 0.0;
    for (int t = 0; t < 10; ++t) {
        const CircleMap& g = shapes[t % 2];
        MobiusMap p1 = fixtures::random_mobius(rng, 0.5), p2 = fixtures::random_mobius(rng, 0.5);
        CircleMap sandwich = g.pre_mobius(p2).post_mobius(p1);
        BarycentricExtension es = barycentric_extension(sandwich, spec);
        std::vector<double> worst(es.values.circles(), 0.0);
        parallel_for(es.values.circles(), [&](int j) {
            std::optional<cplx> seed;
            for (int i = 0; i < es.values.n(); ++i) {
                BaryPoint b = barycentric_point(g, p2(es.values.point(j, i)), seed);
                seed = b.w;
                worst[j] = std::max(worst[j], std::abs(es.values.at(j, i) - p1(b.w)));
            }
        });
        for (double w : worst) natural = std::max(natural, w);
    }
    r.pass = repro <= 1e-6 && natural <= 1e-4;
    r.data = {{"mobius_reproduction", repro}, {"naturality", natural}};
    r.detail = fmt("Mobius reproduction %.1e, naturality %.1e over 10 sandwiches", repro, natural);
    return r;
}

}  // namespace

CriterionResult run_criterion(int id, const GridSpec& spec, const Config& cfg) {
    using Fn = CriterionResult (*)(const GridSpec&, const Config&);
    static const Fn table[criterion_count] = {constant_oracle, radial_stretch, base2,     base1,     aw_round_trip,
                                              pullback_isometry, coset,        mori,      sternberg, barycentric};
    if (id < 1 || id > criterion_count) throw ArgumentError("no acceptance criterion " + std::to_string(id));
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = table[id - 1](spec, cfg);
    } catch (const Error& e) {
        r.id = id;
        r.name = "criterion " + std::to_string(id);
        r.pass = false;
        r.detail = std::string("numerical error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run(const GridSpec& spec, const Config& cfg, const std::vector<int>& ids) {
    std::vector<int> order = ids;
    if (order.empty())
        for (int k = 1; k <= criterion_count; ++k) order.push_back(k);
    std::vector<CriterionResult> out;
    for (int id : order) out.push_back(run_criterion(id, spec, cfg));
    return out;
}

std::string format_line(const CriterionResult& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s  %2d  %-30s %s  [%.1fs]", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.detail.c_str(), r.seconds);
    return buf;
}

nlohmann::json summary_json(const std::vector<CriterionResult>& results, const GridSpec& spec) {
    nlohmann::json j{{"grid_hash", spec.hash()}, {"criteria", nlohmann::json::array()}};
    bool all = true;
    for (const auto& r : results) {
        j["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
        all = all && r.pass;
    }
    j["verdict"] = all ? "pass" : "fail";
    return j;
}

}  // namespace teich::acceptance
