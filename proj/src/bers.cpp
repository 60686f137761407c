#include "teich/bers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "teich/errors.hpp"
#include "teich/numerics.hpp"
#include "teich/solver.hpp"

namespace teich {

namespace {

std::vector<double> reversed(std::vector<double> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

std::vector<cplx> reversed_rows(const ComplexGridFunction& g) {
    std::vector<cplx> out(g.size());
    const int M = g.circles(), N = g.n();
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < N; ++i) out[static_cast<std::size_t>(M - 1 - j) * N + i] = g.at(j, i);
    return out;
}

}  // namespace

QuadraticForm::QuadraticForm(ComplexGridFunction near, ComplexGridFunction far, cplx at_infinity, Evaluator eval)
    : near_(std::move(near)), far_(std::move(far)), at_inf_(at_infinity), eval_(std::move(eval)) {
    if (near_.chart() != Chart::exterior || far_.chart() != Chart::far)
        throw ArgumentError("quadratic form needs exterior and far chart samples");
    if (!(near_.spec() == far_.spec())) throw ConsistencyError("quadratic form charts on different grids");
    if (!std::isfinite(at_inf_.real()) || !std::isfinite(at_inf_.imag())) throw ArgumentError("non-finite value at infinity");
    const int N = near_.n();
    near_interp_ = PolarInterpolator(reversed(near_.radii()), N, reversed_rows(near_));
    std::vector<double> fr{0.0};
    for (double r : far_.radii()) fr.push_back(r);
    std::vector<cplx> fv(static_cast<std::size_t>(N), at_inf_);
    fv.insert(fv.end(), far_.values().begin(), far_.values().end());
    far_interp_ = PolarInterpolator(std::move(fr), N, std::move(fv));
}

QuadraticForm QuadraticForm::from_far_function(const GridSpec& spec, Evaluator phi_tilde) {
    ComplexGridFunction near(spec, Chart::exterior), far(spec, Chart::far);
    for (int j = 0; j < near.circles(); ++j)
        for (int i = 0; i < near.n(); ++i) {
            cplx w = 1.0 / near.point(j, i);
            near.at(j, i) = phi_tilde(w) * std::pow(w, 4);
        }
    for (int j = 0; j < far.circles(); ++j)
        for (int i = 0; i < far.n(); ++i) far.at(j, i) = phi_tilde(far.point(j, i));
    cplx inf = phi_tilde(0.0);
    return QuadraticForm(std::move(near), std::move(far), inf, std::move(phi_tilde));
}

QuadraticForm QuadraticForm::zero(const GridSpec& spec) {
    return from_far_function(spec, [](cplx) { return cplx(0.0, 0.0); });
}

cplx QuadraticForm::evaluate(cplx z) const {
    double r = std::abs(z);
    if (!(r > 1.0)) throw ChartError("quadratic form evaluated outside the exterior disk");
    cplx w = 1.0 / z;
    if (eval_) return eval_(w) * std::pow(w, 4);
    if (r <= spec().r_max()) return near_interp_.at_point(z);
    return far_interp_.at_point(w) * std::pow(w, 4);
}

cplx QuadraticForm::evaluate_far(cplx w) const {
    double s = std::abs(w);
    if (!(s < 1.0)) throw ChartError("far chart evaluated outside the unit disk");
    if (eval_) return eval_(w);
    if (s * spec().r_max() <= 1.0) return far_interp_.at_point(w);
    cplx z = 1.0 / w;
    return near_interp_.at_point(z) * std::pow(z, 4);
}

double QuadraticForm::weighted(cplx z) const {
    double t = std::norm(z) - 1.0;
    return t * t * std::abs(evaluate(z)) / 4.0;
}

double QuadraticForm::weighted_far(cplx w) const {
    double t = 1.0 - std::norm(w);
    return t * t * std::abs(evaluate_far(w)) / 4.0;
}

QuadraticForm QuadraticForm::operator-(const QuadraticForm& o) const { return *this + o.scaled(-1.0); }

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
    if (!(spec() == o.spec())) throw ConsistencyError("quadratic forms on different grids");
    std::vector<cplx> nv = near_.values(), fv = far_.values();
    for (std::size_t k = 0; k < nv.size(); ++k) nv[k] += o.near_.values()[k];
    for (std::size_t k = 0; k < fv.size(); ++k) fv[k] += o.far_.values()[k];
    Evaluator e;
    if (eval_ && o.eval_) e = [a = eval_, b = o.eval_](cplx w) { return a(w) + b(w); };
    return QuadraticForm(ComplexGridFunction(spec(), Chart::exterior, std::move(nv)),
                         ComplexGridFunction(spec(), Chart::far, std::move(fv)), at_inf_ + o.at_inf_, std::move(e));
}

QuadraticForm QuadraticForm::scaled(cplx c) const {
    std::vector<cplx> nv = near_.values(), fv = far_.values();
    for (auto& v : nv) v *= c;
    for (auto& v : fv) v *= c;
    Evaluator e;
    if (eval_) e = [a = eval_, c](cplx w) { return c * a(w); };
    return QuadraticForm(ComplexGridFunction(spec(), Chart::exterior, std::move(nv)),
                         ComplexGridFunction(spec(), Chart::far, std::move(fv)), c * at_inf_, std::move(e));
}

cplx local_schwarzian(const std::function<cplx(cplx)>& f, cplx z, double radius, int points) {
    cplx c1 = 0.0, c2 = 0.0, c3 = 0.0;
    for (int k = 0; k < points; ++k) {
        cplx e = std::polar(1.0, 2.0 * pi * k / points);
        cplx v = f(z + radius * e);
        cplx ie = std::conj(e);
        c1 += v * ie;
        c2 += v * ie * ie;
        c3 += v * ie * ie * ie;
    }
    c1 /= points * radius;
    c2 /= points * radius * radius;
    c3 /= points * radius * radius * radius;
    if (std::abs(c1) < 1e-10) throw BranchError("derivative vanishes: map is not locally injective");
    cplx q = c2 / c1;
    return 6.0 * c3 / c1 - 6.0 * q * q;
}

QuadraticForm schwarzian_of(const GridSpec& spec, const std::function<cplx(cplx)>& f, cplx center) {
    const int N = spec.n_theta;
    auto G = [f, center](cplx w) { return 1.0 / (f(1.0 / w) - center); };
    auto far_radius = [](cplx w) { return std::min((1.0 - std::abs(w)) / 2.0, 0.25); };
    QuadraticForm::Evaluator eval = [G, far_radius](cplx w) { return local_schwarzian(G, w, far_radius(w)); };

    ComplexGridFunction near(spec, Chart::exterior), far(spec, Chart::far);
    parallel_for(near.circles(), [&](int j) {
        double r = near.radii()[j];
        double rad = std::min((r - 1.0) / 2.0, 8.0 * 2.0 * pi * r / N);
        for (int i = 0; i < N; ++i) near.at(j, i) = local_schwarzian(f, near.point(j, i), rad);
    });
    parallel_for(far.circles(), [&](int j) {
        for (int i = 0; i < N; ++i) far.at(j, i) = eval(far.point(j, i));
    });
    cplx inf = eval(0.0);
    return QuadraticForm(std::move(near), std::move(far), inf, std::move(eval));
}

QuadraticForm schwarzian(const SolvedMap& f) {
    if (f.kind() != MapKind::bers) throw ArgumentError("schwarzian requires a map of kind bers");
    auto shared = std::make_shared<const SolvedMap>(f);
    return schwarzian_of(f.spec(), [shared](cplx z) { return shared->evaluate(z); }, f.center_value());
}

QuadraticForm bers_projection(const BeltramiField& mu, const Config& cfg) { return schwarzian(solve_bers(mu, cfg)); }

BNorm b_norm_detail(const QuadraticForm& phi) {
    struct Cand {
        double v;
        cplx w;
        double step;
    };
    std::vector<Cand> c;
    const auto& near = phi.near();
    const int N = near.n();
    for (int j = 0; j < near.circles(); ++j) {
        double r = near.radii()[j];
        double t = r * r - 1.0;
        for (int i = 0; i < N; ++i) {
            cplx w = 1.0 / near.point(j, i);
            c.push_back({t * t * std::abs(near.at(j, i)) / 4.0, w, 2.0 * pi / (N * r)});
        }
    }
    const auto& far = phi.far();
    for (int j = 0; j < far.circles(); ++j) {
        double s = far.radii()[j], t = 1.0 - s * s;
        for (int i = 0; i < N; ++i)
            c.push_back({t * t * std::abs(far.at(j, i)) / 4.0, far.point(j, i), 2.0 * pi * s / N});
    }
    c.push_back({std::abs(phi.at_infinity()) / 4.0, 0.0, far.radii().front()});

    auto best = std::max_element(c.begin(), c.end(), [](const Cand& a, const Cand& b) { return a.v < b.v; });
    BNorm out{best->v, best->w};
    if (!phi.has_evaluator() || out.value == 0.0) return out;

    std::vector<Cand> top;
    std::vector<Cand> sorted = c;
    std::sort(sorted.begin(), sorted.end(), [](const Cand& a, const Cand& b) { return a.v > b.v; });
    for (const auto& s : sorted) {
        bool dup = false;
        for (const auto& t : top) dup = dup || std::abs(t.w - s.w) < 2.0 * t.step;
        if (!dup) top.push_back(s);
        if (top.size() >= 16) break;
    }
    // Refinement stays inside the sampled region |z| >= innermost exterior circle.
    const double w_max = 1.0 / near.radii().back();
    auto objective = [&phi, w_max](double x, double y) {
        cplx w(x, y);
        if (!(std::abs(w) <= w_max)) return 0.0;
        return phi.weighted_far(w);
    };
    for (const auto& t : top) {
        auto [x, y] = maximize_2d(objective, t.w.real(), t.w.imag(), t.step);
        double v = objective(x, y);
        if (v > out.value) out = {v, cplx(x, y)};
    }
    return out;
}

double b_norm(const QuadraticForm& phi) { return b_norm_detail(phi).value; }

std::vector<DecayBand> b0_decay_profile(const QuadraticForm& phi) {
    const auto& spec = phi.spec();
    std::vector<DecayBand> out;
    for (double e : spec.boundary_offsets) out.push_back({e, 0.0});
    const auto& near = phi.near();
    for (int j = 0; j < near.circles(); ++j) {
        double r = near.radii()[j];
        auto band = spec.band_of(r - 1.0);
        if (!band) continue;
        double t = r * r - 1.0, m = 0.0;
        for (int i = 0; i < near.n(); ++i) m = std::max(m, std::abs(near.at(j, i)));
        out[*band].value = std::max(out[*band].value, t * t * m / 4.0);
    }
    return out;
}

NormResult b0_alpha_norm(const QuadraticForm& phi, double alpha, const Config& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("b0_alpha_norm requires alpha in (0,1)");
    const auto& spec = phi.spec();
    NormResult res;
    res.bands.assign(spec.bands(), 0.0);
    const auto& near = phi.near();
    for (int j = 0; j < near.circles(); ++j) {
        double r = near.radii()[j], t = r * r - 1.0;
        double w = std::pow(2.0 / t, alpha) * t * t / 4.0, m = 0.0;
        for (int i = 0; i < near.n(); ++i) m = std::max(m, std::abs(near.at(j, i)));
        res.value = std::max(res.value, w * m);
        if (auto band = spec.band_of(r - 1.0)) res.bands[*band] = std::max(res.bands[*band], w * m);
    }
    const auto& far = phi.far();
    for (int j = 0; j < far.circles(); ++j) {
        double s = far.radii()[j], t = 1.0 - s * s;
        double w = std::pow(2.0 * s * s / t, alpha) * t * t / 4.0;
        for (int i = 0; i < far.n(); ++i) res.value = std::max(res.value, w * std::abs(far.at(j, i)));
    }
    const auto& b = res.bands;
    const int J = static_cast<int>(b.size());
    if (J >= 4) {
        bool growing = true;
        for (int j = J - 3; j < J; ++j) growing = growing && b[j - 1] > 0.0 && b[j] > cfg.growth_ratio * b[j - 1];
        if (growing) {
            res.infinite = true;
            res.value = INFINITY;
        }
    }
    return res;
}

NormResult a_p_norm(const QuadraticForm& phi, double p, const Config& cfg) {
    if (!(p >= 2.0)) throw ArgumentError("a_p_norm requires p >= 2");
    const auto& far = phi.far();
    const int N = far.n();
    std::vector<double> s{0.0}, fi{0.0};
    for (int j = 0; j < far.circles(); ++j) {
        double r = far.radii()[j], t = 1.0 - r * r, m = 0.0;
        for (int i = 0; i < N; ++i) m += std::pow(t * t * std::abs(far.at(j, i)) / 4.0, p);
        m /= N;
        s.push_back(r);
        fi.push_back(8.0 * pi * m * r / (t * t));
    }
    double start = cumulative_integral(s, fi).back();

    const auto& near = phi.near();
    std::vector<double> offsets, integrand;
    for (int j = 0; j < near.circles(); ++j) {
        double r = near.radii()[j], t = r * r - 1.0, m = 0.0;
        for (int i = 0; i < N; ++i) m += std::pow(t * t * std::abs(near.at(j, i)) / 4.0, p);
        m /= N;
        offsets.push_back(r - 1.0);
        integrand.push_back(8.0 * pi * m * r / ((r - 1.0) * (r + 1.0) * (r + 1.0)));
    }
    return ladder_integral(offsets, integrand, start, phi.spec().boundary_offsets, cfg);
}

bool profile_vanishes(const std::vector<DecayBand>& profile, const Config& cfg) {
    if (profile.empty()) return false;
    double first = profile.front().value, last = profile.back().value;
    if (last <= cfg.profile_floor || last < first / cfg.b0_drop) return true;
    const int J = static_cast<int>(profile.size());
    const int k = std::min(J, std::max(cfg.fit_bands, 2));
    for (int j = J - k + 1; j < J; ++j)
        if (!(profile[j].value <= cfg.monotone_ratio * profile[j - 1].value)) return false;
    DecayFit fit = decay_exponent_from_profile(profile, cfg);
    return !fit.lower_bound_only && fit.alpha_hat >= cfg.vanish_exponent;
}

DecayFit decay_exponent_from_profile(const std::vector<DecayBand>& profile, const Config& cfg) {
    DecayFit fit;
    const int J = static_cast<int>(profile.size());
    const int want = std::max(cfg.fit_bands, 4);
    std::vector<std::pair<double, double>> pairs;
    for (int j = std::max(0, J - want); j < J; ++j)
        if (profile[j].value > cfg.profile_floor) pairs.emplace_back(profile[j].offset, profile[j].value);
    if (static_cast<int>(pairs.size()) < want) {
        fit.lower_bound_only = true;
        pairs.clear();
        for (int j = J - 1; j >= 0 && static_cast<int>(pairs.size()) < 4; --j)
            if (profile[j].value > cfg.profile_floor) pairs.emplace_back(profile[j].offset, profile[j].value);
        if (pairs.size() < 4) {
            fit.alpha_hat = std::numeric_limits<double>::infinity();
            return fit;
        }
    }
    SlopeFit s = log_log_slope_fit(pairs);
    fit.alpha_hat = s.slope;
    fit.r_squared = s.r_squared;
    fit.bands_used = static_cast<int>(pairs.size());
    return fit;
}

DecayFit decay_exponent(const QuadraticForm& phi, const Config& cfg) {
    return decay_exponent_from_profile(b0_decay_profile(phi), cfg);
}

QuadraticForm pullback(const QuadraticForm& phi, const MobiusMap& gamma) {
    const MobiusMap gt{std::conj(gamma.a), std::conj(gamma.b)};
    auto pulled = [phi, gt](cplx w) {
        cplx d = gt.derivative(w);
        return phi.evaluate_far(gt(w)) * d * d;
    };
    const GridSpec& spec = phi.spec();
    ComplexGridFunction near(spec, Chart::exterior), far(spec, Chart::far);
    for (int j = 0; j < near.circles(); ++j)
        for (int i = 0; i < near.n(); ++i) {
            cplx w = 1.0 / near.point(j, i);
            near.at(j, i) = pulled(w) * std::pow(w, 4);
        }
    for (int j = 0; j < far.circles(); ++j)
        for (int i = 0; i < far.n(); ++i) far.at(j, i) = pulled(far.point(j, i));
    cplx inf = pulled(0.0);
    QuadraticForm::Evaluator e;
    if (phi.has_evaluator()) e = pulled;
    return QuadraticForm(std::move(near), std::move(far), inf, std::move(e));
}

double invariance_residual(const QuadraticForm& phi, const FuchsianSample& sample) {
    double worst = 0.0;
    for (const auto& g : sample.generators) worst = std::max(worst, b_norm(pullback(phi, g) - phi));
    return worst;
}

double holomorphy_residual(const QuadraticForm& phi) {
    const auto& near = phi.near();
    std::vector<double> radii = reversed(near.radii());
    PolarDerivatives d = polar_derivatives(radii, near.n(), reversed_rows(near));
    double num = 0.0, den = 0.0;
    const int M = near.circles(), N = near.n();
    for (int j = 2; j < M - 2; ++j)
        for (int i = 0; i < N; ++i) {
            std::size_t k = static_cast<std::size_t>(j) * N + i;
            num = std::max(num, std::abs(d.dzbar[k]));
            den = std::max(den, std::abs(d.dz[k]));
        }
    return den > 0.0 ? num / den : num;
}

nlohmann::json form_report(const QuadraticForm& phi, const Config& cfg) {
    auto profile = b0_decay_profile(phi);
    nlohmann::json prof = nlohmann::json::array();
    for (const auto& b : profile) prof.push_back({b.offset, b.value});
    DecayFit fit = decay_exponent_from_profile(profile, cfg);
    nlohmann::json j{{"grid_hash", phi.spec().hash()},
                     {"b_norm", b_norm(phi)},
                     {"decay_profile", prof},
                     {"alpha_lower_bound_only", fit.lower_bound_only}};
    if (std::isfinite(fit.alpha_hat))
        j["alpha_hat"] = fit.alpha_hat;
    else
        j["alpha_hat"] = "inf";
    return j;
}

}  // namespace teich
