#include "teich/beltrami.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "teich/errors.hpp"
#include "teich/numerics.hpp"
#include "teich/solver.hpp"

namespace teich {

BeltramiField::BeltramiField(ComplexGridFunction samples, Formula formula)
    : samples_(std::move(samples)), formula_(std::move(formula)) {
    if (samples_.chart() != Chart::disk) throw ArgumentError("Beltrami field must live on the disk chart");
    sup_ = samples_.max_abs();
    if (!(sup_ < 1.0)) throw DomainError("Beltrami coefficient must satisfy sup |mu| < 1");
    const auto& v = samples_.values();
    std::string bytes(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(cplx));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    hash_ = spec().hash() + "-" + buf;
    interp_ = PolarInterpolator(spec().radii_inner, spec().n_theta, samples_.values());
}

BeltramiField BeltramiField::from_function(const GridSpec& spec, Formula f) {
    ComplexGridFunction g(spec, Chart::disk);
    for (int j = 0; j < g.circles(); ++j)
        for (int i = 0; i < g.n(); ++i) g.at(j, i) = f(g.point(j, i));
    return BeltramiField(std::move(g), std::move(f));
}

BeltramiField BeltramiField::zero(const GridSpec& spec) {
    return from_function(spec, [](cplx) { return cplx(0.0, 0.0); });
}

cplx BeltramiField::evaluate(cplx z) const {
    if (!(std::abs(z) <= 1.0 + 1e-12)) throw ChartError("Beltrami field evaluated outside the closed disk");
    if (formula_) return formula_(z);
    return interp_.at_point(z);
}

std::string BeltramiField::sidecar_json() const {
    return nlohmann::json{{"sup_bound", sup_}, {"grid_hash", spec().hash()}}.dump(2);
}

nlohmann::json NormResult::to_json() const {
    nlohmann::json j;
    if (infinite)
        j["value"] = "inf";
    else
        j["value"] = value;
    j["infinite"] = infinite;
    j["bands"] = bands;
    return j;
}

double sup_norm(const BeltramiField& mu) { return mu.sup_bound(); }

NormResult ladder_integral(const std::vector<double>& offsets, const std::vector<double>& integrand, double start,
                           const std::vector<double>& ladder, const Config& cfg) {
    const int n = static_cast<int>(offsets.size());
    std::vector<double> t(n);
    for (int k = 0; k < n; ++k) t[k] = -std::log(offsets[k]);
    std::vector<double> S = cumulative_integral(t, integrand);

    NormResult res;
    std::vector<double> eps;
    for (double e : ladder) {
        int best = -1;
        for (int k = 0; k < n; ++k)
            if (best < 0 || std::abs(offsets[k] - e) < std::abs(offsets[best] - e)) best = k;
        if (best < 0 || std::abs(offsets[best] - e) > 0.05 * e) continue;
        res.bands.push_back(start + S[best]);
        eps.push_back(offsets[best]);
    }
    const int J = static_cast<int>(res.bands.size());
    if (J < 5) throw ResolutionError("ladder integral needs at least 5 ladder circles in the grid");
    std::vector<double> d(J - 1);
    for (int j = 1; j < J; ++j) d[j - 1] = res.bands[j] - res.bands[j - 1];

    const double total = start + S.back();
    const double scale = std::max(std::abs(total), 1e-300);
    bool negligible = true;
    for (int j = J - 5; j < J - 1; ++j) negligible = negligible && std::abs(d[j]) <= 1e-15 * scale;
    if (negligible) {
        res.value = total;
        return res;
    }
    double worst = 0.0;
    for (int j = J - 4; j < J - 1; ++j) {
        double ratio = d[j - 1] > 0.0 ? d[j] / d[j - 1] : (d[j] > 0.0 ? INFINITY : 0.0);
        worst = std::max(worst, ratio);
    }
    if (!(worst <= cfg.cauchy_ratio)) {
        res.infinite = true;
        res.value = INFINITY;
        return res;
    }
    double rho = d[J - 2] / d[J - 3];
    double tail = 0.0;
    if (rho > 0.0 && d[J - 2] > 0.0) {
        double q = eps[J - 1] / eps[J - 2];
        double beta = std::log(rho) / std::log(q);
        tail = d[J - 2] * std::pow(offsets.back() / eps[J - 1], beta) / (std::pow(q, -beta) - 1.0);
    }
    res.value = total + tail;
    return res;
}

NormResult p_norm(const BeltramiField& mu, double p, const Config& cfg) { return p_norm_samples(mu.samples(), p, cfg); }

NormResult p_norm_samples(const ComplexGridFunction& g, double p, const Config& cfg) {
    if (!(p >= 1.0)) throw ArgumentError("p_norm requires p >= 1");
    if (g.chart() != Chart::disk) throw ChartError("p_norm needs disk samples");
    std::vector<double> offsets{1.0}, integrand{0.0};
    for (int j = 0; j < g.circles(); ++j) {
        double r = g.radii()[j], m = 0.0;
        for (int i = 0; i < g.n(); ++i) m += std::pow(std::abs(g.at(j, i)), p);
        m /= g.n();
        offsets.push_back(1.0 - r);
        integrand.push_back(8.0 * pi * m * r / ((1.0 - r) * (1.0 + r) * (1.0 + r)));
    }
    return ladder_integral(offsets, integrand, 0.0, g.spec().boundary_offsets, cfg);
}

std::vector<double> disk_band_maxima(const ComplexGridFunction& f, const std::function<double(double)>& weight) {
    const auto& spec = f.spec();
    std::vector<double> out(spec.bands(), 0.0);
    for (int j = 0; j < f.circles(); ++j) {
        double r = f.radii()[j];
        auto band = spec.band_of(1.0 - r);
        if (!band) continue;
        double w = weight(r), m = 0.0;
        for (int i = 0; i < f.n(); ++i) m = std::max(m, std::abs(f.at(j, i)));
        out[*band] = std::max(out[*band], w * m);
    }
    return out;
}

NormResult holder_weighted_norm(const BeltramiField& mu, double alpha, const Config& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("holder_weighted_norm requires alpha in (0,1)");
    auto weight = [alpha](double r) { return std::pow(2.0 / (1.0 - r * r), alpha); };
    NormResult res;
    const auto& g = mu.samples();
    for (int j = 0; j < g.circles(); ++j) {
        double w = weight(g.radii()[j]);
        for (int i = 0; i < g.n(); ++i) res.value = std::max(res.value, w * std::abs(g.at(j, i)));
    }
    res.bands = disk_band_maxima(g, weight);
    const int J = static_cast<int>(res.bands.size());
    if (J >= 4) {
        bool growing = true;
        for (int j = J - 3; j < J; ++j)
            growing = growing && res.bands[j - 1] > 0.0 && res.bands[j] > cfg.growth_ratio * res.bands[j - 1];
        if (growing) {
            res.infinite = true;
            res.value = INFINITY;
        }
    }
    return res;
}

VanishingResult vanishing_profile(const BeltramiField& mu, const Config& cfg) {
    VanishingResult res;
    res.band_maxima = disk_band_maxima(mu.samples(), [](double) { return 1.0; });
    const auto& b = res.band_maxima;
    const int J = static_cast<int>(b.size());
    if (J < 3) return res;
    bool decreasing = true;
    for (int j = J - 2; j < J; ++j) decreasing = decreasing && b[j] <= cfg.monotone_ratio * b[j - 1];
    bool zero_tail = b[J - 1] <= cfg.profile_floor && b[J - 2] <= cfg.profile_floor && b[J - 3] <= cfg.profile_floor;
    res.vanishes = (b[J - 1] < cfg.vanish_eps0) && (decreasing || zero_tail);
    return res;
}

static void require_solution_of(const SolvedMap& f, const BeltramiField& nu) {
    if (f.kind() != MapKind::disk_self_map) throw ConsistencyError("expected a disk self-map");
    if (f.source().content_hash() != nu.content_hash())
        throw ConsistencyError("solved map was not computed from the given coefficient");
}

BeltramiField compose(const BeltramiField& nu1, const BeltramiField& nu2, const SolvedMap& f_nu2,
                      const Config& cfg) {
    require_solution_of(f_nu2, nu2);
    if (!(nu1.spec() == nu2.spec())) throw ConsistencyError("coefficients live on different grids");
    ComplexGridFunction out(nu1.spec(), Chart::disk);
    const int M = out.circles(), N = out.n();
    parallel_for(M, [&](int j) {
        cplx seed = f_nu2.nearest_preimage(out.point(j, 0));
        for (int i = 0; i < N; ++i) {
            cplx zeta = out.point(j, i);
            cplx z = f_nu2.inverse_evaluate(zeta, seed, cfg);
            seed = z;
            cplx p = f_nu2.dz(z);
            cplx v1 = nu1.evaluate(z), v2 = nu2.evaluate(z);
            out.at(j, i) = (v1 - v2) / (1.0 - std::conj(v2) * v1) * (p / std::conj(p));
        }
    });
    return BeltramiField(std::move(out));
}

BeltramiField right_translate(const BeltramiField& mu, const BeltramiField& nu, const SolvedMap& f_nu,
                              const Config& cfg) {
    return compose(mu, nu, f_nu, cfg);
}

BeltramiField product(const BeltramiField& mu, const BeltramiField& nu, const SolvedMap& f_nu) {
    require_solution_of(f_nu, nu);
    if (!(mu.spec() == nu.spec())) throw ConsistencyError("coefficients live on different grids");
    ComplexGridFunction out(nu.spec(), Chart::disk);
    for (int j = 0; j < out.circles(); ++j)
        for (int i = 0; i < out.n(); ++i) {
            cplx w = f_nu.forward_inner().at(j, i);
            if (std::abs(w) > 1.0) w /= std::abs(w);
            cplx p = f_nu.dz_inner().at(j, i);
            cplx theta = std::conj(p) / p;
            cplx m = mu.evaluate(w) * theta, v = nu.at(j, i);
            out.at(j, i) = (v + m) / (1.0 + std::conj(v) * m);
        }
    return BeltramiField(std::move(out));
}

BeltramiField tail_part(const BeltramiField& mu, double r0) {
    const auto& radii = mu.spec().radii_inner;
    if (!(r0 > radii.front() && r0 < radii.back())) throw ArgumentError("r0 outside the grid's radial range");
    ComplexGridFunction g = mu.samples();
    for (int j = 0; j < g.circles(); ++j)
        if (g.radii()[j] <= r0)
            for (int i = 0; i < g.n(); ++i) g.at(j, i) = 0.0;
    BeltramiField::Formula f;
    if (mu.has_formula()) f = [mu, r0](cplx z) { return std::abs(z) > r0 ? mu.evaluate(z) : cplx(0.0, 0.0); };
    return BeltramiField(std::move(g), std::move(f));
}

TailSplit split_tail(const BeltramiField& mu, double r0, const SolvedMap& f_tail, const Config& cfg) {
    BeltramiField tail = tail_part(mu, r0);
    BeltramiField core = compose(mu, tail, f_tail, cfg);
    return {std::move(tail), std::move(core)};
}

}  // namespace teich
