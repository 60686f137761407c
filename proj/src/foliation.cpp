#include "teich/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "teich/errors.hpp"
#include "teich/numerics.hpp"

namespace teich {

Space Space::parse(const std::string& s) {
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    double param = 0.0;
    if (colon != std::string::npos) {
        try {
            param = std::stod(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw ArgumentError("bad space parameter: " + s);
        }
    }
    if (head == "B0") return {SpaceKind::B0, 0.0};
    if (head == "Ap") {
        if (colon == std::string::npos) param = 2.0;
        if (!(param >= 2.0)) throw ArgumentError("Ap needs p >= 2");
        return {SpaceKind::Ap, param};
    }
    if (head == "B0alpha" || head == "B0posAlpha") {
        if (!(param > 0.0 && param < 1.0)) throw ArgumentError("Hölder spaces need alpha in (0,1)");
        return {head == "B0alpha" ? SpaceKind::B0alpha : SpaceKind::B0posAlpha, param};
    }
    throw ArgumentError("unknown space: " + s);
}

std::string Space::to_string() const {
    char buf[48];
    switch (kind) {
        case SpaceKind::B0: return "B0";
        case SpaceKind::Ap: std::snprintf(buf, sizeof buf, "Ap:%g", param); return buf;
        case SpaceKind::B0alpha: std::snprintf(buf, sizeof buf, "B0alpha:%g", param); return buf;
        case SpaceKind::B0posAlpha: std::snprintf(buf, sizeof buf, "B0posAlpha:%g", param); return buf;
    }
    return "?";
}

static nlohmann::json finite_or_inf(double v) {
    if (std::isfinite(v)) return v;
    return "inf";
}

nlohmann::json CosetReport::to_json() const {
    nlohmann::json prof = nlohmann::json::array();
    for (const auto& b : delta_profile) prof.push_back({b.offset, b.value});
    return {{"space", space.to_string()},
            {"input_norm", finite_or_inf(input_norm)},
            {"input_in_space", input_in_space},
            {"dilatation_K", dilatation_K},
            {"delta_b_norm", delta_b_norm},
            {"composition_correction", composition_correction},
            {"delta_profile", prof},
            {"delta_alpha_hat", finite_or_inf(delta_decay.alpha_hat)},
            {"delta_alpha_lower_bound_only", delta_decay.lower_bound_only},
            {"delta_ap", delta_ap.to_json()},
            {"threshold", threshold},
            {"verdict", pass ? "pass" : "fail"}};
}

std::pair<bool, double> field_in_space(const BeltramiField& mu, const Space& space, const Config& cfg) {
    switch (space.kind) {
        case SpaceKind::B0: {
            auto v = vanishing_profile(mu, cfg);
            return {v.vanishes, v.band_maxima.empty() ? 0.0 : v.band_maxima.back()};
        }
        case SpaceKind::Ap: {
            auto n = p_norm(mu, space.param, cfg);
            return {!n.infinite, n.value};
        }
        case SpaceKind::B0alpha: {
            auto n = holder_weighted_norm(mu, space.param, cfg);
            return {!n.infinite, n.value};
        }
        case SpaceKind::B0posAlpha: {
            auto n = holder_weighted_norm(mu, std::min(space.param + cfg.exponent_margin, 0.99), cfg);
            return {!n.infinite, n.value};
        }
    }
    return {false, 0.0};
}

CosetReport coset_residual(const BeltramiField& mu, const BeltramiField& nu, const Space& space, const Config& cfg) {
    CosetReport rep;
    rep.space = space;
    auto [in, value] = field_in_space(mu, space, cfg);
    rep.input_in_space = in;
    rep.input_norm = value;
    if (!in) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "mu fails the %s diagnostic (norm %g)", space.to_string().c_str(), value);
        throw ArgumentError(buf);
    }
    rep.dilatation_K = maximal_dilatation(nu);
    SolvedMap f_nu = solve_disk(nu, cfg);
    BeltramiField moved = product(mu, nu, f_nu);
    {
        const int n = 2048;
        CircleMap g = solve_disk(mu, cfg).boundary_map(n).compose(f_nu.boundary_map(n));
        for (cplx p : {cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-1.0, 0.0)})
            rep.composition_correction = std::max(rep.composition_correction, std::abs(g.apply(p) - p));
    }
    QuadraticForm delta = bers_projection(moved, cfg) - bers_projection(nu, cfg);
    rep.delta_b_norm = b_norm(delta);
    rep.delta_profile = b0_decay_profile(delta);
    rep.delta_decay = decay_exponent_from_profile(rep.delta_profile, cfg);
    switch (space.kind) {
        case SpaceKind::B0: {
            rep.threshold = cfg.vanish_exponent;
            rep.pass = profile_vanishes(rep.delta_profile, cfg);
            break;
        }
        case SpaceKind::Ap:
            rep.delta_ap = a_p_norm(delta, space.param, cfg);
            rep.threshold = space.param;
            rep.pass = !rep.delta_ap.infinite;
            break;
        case SpaceKind::B0alpha:
            rep.threshold = space.param / (rep.dilatation_K * rep.dilatation_K) - cfg.holder_margin;
            rep.pass = rep.delta_decay.alpha_hat >= rep.threshold;
            break;
        case SpaceKind::B0posAlpha:
            rep.threshold = space.param + cfg.exponent_margin;
            rep.pass = rep.delta_decay.alpha_hat >= rep.threshold;
            break;
    }
    return rep;
}

nlohmann::json Base2Report::to_json() const {
    return {{"max_violation", max_violation}, {"identity_residual", identity_residual}, {"points", points}};
}

Base2Report check_base2(const BeltramiField& mu1, const BeltramiField& mu2, const BeltramiField& nu,
                        const SolvedMap& f_nu, const Config& cfg) {
    BeltramiField r1 = compose(mu1, nu, f_nu, cfg), r2 = compose(mu2, nu, f_nu, cfg);
    Base2Report rep;
    const auto& img = f_nu.forward_inner();
    for (int j = 0; j < img.circles(); ++j)
        for (int i = 0; i < img.n(); ++i) {
            cplx zeta = img.at(j, i);
            if (std::abs(zeta) > 1.0) zeta /= std::abs(zeta);
            cplx m1 = mu1.at(j, i), m2 = mu2.at(j, i), v = nu.at(j, i);
            double lhs = std::abs(r1.evaluate(zeta) - r2.evaluate(zeta));
            double rhs = std::abs(m1 - m2) / std::sqrt((1.0 - std::norm(m1)) * (1.0 - std::norm(m2)));
            double mid = std::abs(m1 - m2) * (1.0 - std::norm(v)) /
                         (std::abs(1.0 - std::conj(v) * m1) * std::abs(1.0 - std::conj(v) * m2));
            rep.max_violation = std::max(rep.max_violation, lhs - rhs);
            rep.identity_residual = std::max(rep.identity_residual, std::abs(lhs - mid));
            ++rep.points;
        }
    return rep;
}

nlohmann::json Base1Report::to_json() const {
    return {{"max_ratio", finite_or_inf(max_ratio)}, {"samples", samples}, {"dropped", dropped}};
}

Base1Report check_base1(const BeltramiField& mu, const BeltramiField& nu, const Config& cfg) {
    if (!(mu.spec() == nu.spec())) throw ConsistencyError("coefficients live on different grids");
    SolvedMap fm = solve_bers(mu, cfg), fn = solve_bers(nu, cfg);
    QuadraticForm pm = schwarzian(fm), pn = schwarzian(fn);
    const GridSpec& spec = mu.spec();
    const int M = static_cast<int>(spec.radii_inner.size()), N = spec.n_theta;

    // F * J on the disk circles, with the last circle repeated on |x| = 1.
    std::vector<double> rad{0.0};
    for (double r : spec.radii_inner) rad.push_back(r);
    rad.push_back(1.0);
    std::vector<double> weight(static_cast<std::size_t>(M + 1) * N);
    std::vector<cplx> image(static_cast<std::size_t>(M + 1) * N);
    for (int j = 0; j <= M; ++j)
        for (int i = 0; i < N; ++i) {
            int jj = std::min(j, M - 1);
            cplx a = mu.at(jj, i), b = nu.at(jj, i);
            double F = std::norm(a - b) / ((1.0 - std::norm(a)) * (1.0 - std::norm(b)));
            double J = std::norm(fn.dz_inner().at(jj, i)) - std::norm(fn.dzbar_inner().at(jj, i));
            weight[static_cast<std::size_t>(j) * N + i] = F * J;
            image[static_cast<std::size_t>(j) * N + i] = j < M ? fn.forward_inner().at(j, i) : fn.boundary()[i];
        }
    double spacing = 0.0;
    for (int i = 0; i < N; ++i) spacing = std::max(spacing, std::abs(fn.boundary()[(i + 1) % N] - fn.boundary()[i]));

    Base1Report rep;
    const auto& near = pm.near();
    const int stride = std::max(1, N / 64);
    for (int j = 0; j < near.circles(); ++j) {
        double r = near.radii()[j];
        if (r < cfg.base1_min_radius) continue;
        for (int i = 0; i < N; i += stride) {
            cplx z = near.point(j, i);
            cplx zeta = fn.evaluate(z);
            double dist = 1e300;
            for (int k = 0; k < N; ++k) dist = std::min(dist, std::abs(fn.boundary()[k] - zeta));
            if (dist < 4.0 * spacing) {
                ++rep.dropped;
                continue;
            }
            cplx fp = fn.dz(z);
            double lhs = std::abs(near.at(j, i) - pn.near().at(j, i)) / std::norm(fp);
            double rho = 2.0 / (r * r - 1.0) / std::abs(fp);
            std::vector<double> radial(rad.size(), 0.0);
            for (int jr = 1; jr <= M + 1; ++jr) {
                double acc = 0.0;
                for (int k = 0; k < N; ++k) {
                    std::size_t idx = static_cast<std::size_t>(jr - 1) * N + k;
                    double d = std::norm(image[idx] - zeta);
                    acc += weight[idx] / (d * d);
                }
                radial[jr] = 2.0 * pi * rad[jr] * acc / N;
            }
            double I = cumulative_integral(rad, radial).back();
            double rhs = 3.0 * rho / std::sqrt(pi) * std::sqrt(std::max(I, 0.0));
            rep.lhs.push_back(lhs);
            rep.rhs.push_back(rhs);
            ++rep.samples;
            double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 1e-14 ? INFINITY : 0.0);
            rep.max_ratio = std::max(rep.max_ratio, ratio);
        }
    }
    return rep;
}

double ClaimsReport::claim1_constant() const { return claim1_rhs > 0.0 ? claim1_lhs / claim1_rhs : 0.0; }
double ClaimsReport::claim2_constant() const { return claim2_rhs > 0.0 ? claim2_lhs / claim2_rhs : 0.0; }

nlohmann::json ClaimsReport::to_json() const {
    return {{"p", p},
            {"claim1", {{"lhs", finite_or_inf(claim1_lhs)}, {"rhs_without_constant", claim1_rhs},
                        {"implied_constant", finite_or_inf(claim1_constant())}, {"finite", claim1_finite}}},
            {"claim2", {{"lhs", finite_or_inf(claim2_lhs)}, {"rhs_without_constant", claim2_rhs},
                        {"implied_constant", finite_or_inf(claim2_constant())}, {"finite", claim2_finite}}}};
}

static ComplexGridFunction difference(const ComplexGridFunction& a, const ComplexGridFunction& b) {
    std::vector<cplx> v = a.values();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b.values()[k];
    return ComplexGridFunction(a.spec(), a.chart(), std::move(v));
}

ClaimsReport check_claims_p(const BeltramiField& mu1, const BeltramiField& mu2, const BeltramiField& nu, double p,
                            const Config& cfg) {
    if (!(p >= 2.0)) throw ArgumentError("check_claims_p requires p >= 2");
    ClaimsReport rep;
    rep.p = p;
    auto root = [p](const NormResult& n) { return n.infinite ? INFINITY : std::pow(std::max(n.value, 0.0), 1.0 / p); };
    NormResult base = p_norm_samples(difference(mu1.samples(), mu2.samples()), p, cfg);
    rep.claim1_rhs = rep.claim2_rhs = root(base);

    NormResult c1 = a_p_norm(bers_projection(mu1, cfg) - bers_projection(mu2, cfg), p, cfg);
    rep.claim1_finite = !c1.infinite;
    rep.claim1_lhs = root(c1);

    SolvedMap f_nu = solve_disk(nu, cfg);
    BeltramiField r1 = compose(mu1, nu, f_nu, cfg), r2 = compose(mu2, nu, f_nu, cfg);
    NormResult c2 = p_norm_samples(difference(r1.samples(), r2.samples()), p, cfg);
    rep.claim2_finite = !c2.infinite;
    rep.claim2_lhs = root(c2);
    return rep;
}

nlohmann::json MoriReport::to_json() const {
    return {{"status", status}, {"lower", lower}, {"upper", upper}, {"K", K}, {"within_mori", within_mori}, {"rays", rays}};
}

MoriReport mori_profile(const SolvedMap& f, int bands, const Config& cfg) {
    if (f.kind() != MapKind::disk_self_map) throw ArgumentError("mori_profile requires a disk self-map");
    MoriReport rep;
    rep.K = maximal_dilatation(f.source());
    const GridSpec& spec = f.spec();
    const auto& img = f.forward_inner();
    const int J = spec.bands();
    std::vector<int> rows;
    for (int j = 0; j < img.circles(); ++j) {
        auto b = spec.band_of(1.0 - img.radii()[j]);
        if (b && *b >= J - bands) rows.push_back(j);
    }
    if (rows.size() < 4) {
        rep.status = "indeterminate";
        return rep;
    }
    rep.lower = INFINITY;
    rep.upper = -INFINITY;
    const int stride = std::max(1, img.n() / 32);
    for (int i = 0; i < img.n(); i += stride) {
        std::vector<std::pair<double, double>> pairs;
        for (int j : rows) {
            double d = 1.0 - std::abs(img.at(j, i));
            if (d > cfg.profile_floor) pairs.emplace_back(1.0 - img.radii()[j], d);
        }
        if (pairs.size() < 4) continue;
        double a = log_log_slope_fit(pairs).slope;
        rep.lower = std::min(rep.lower, a);
        rep.upper = std::max(rep.upper, a);
        ++rep.rays;
    }
    if (rep.rays == 0) {
        rep.status = "indeterminate";
        rep.lower = rep.upper = 0.0;
        return rep;
    }
    rep.status = "ok";
    rep.within_mori = rep.lower >= 1.0 / rep.K - 0.05 && rep.upper <= rep.K + 0.05;
    return rep;
}

}  // namespace teich
