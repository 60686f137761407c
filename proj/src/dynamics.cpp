#include "teich/dynamics.hpp"

#include <gsl/gsl_multifit.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "teich/errors.hpp"

namespace teich {

Germ1D Germ1D::from_function(Fn g, Fn dg, double delta, double alpha, int samples) {
    if (!(delta > 0.0)) throw ArgumentError("germ interval must have delta > 0");
    if (samples < 65) throw ArgumentError("germ needs at least 65 samples");
    if (samples % 2 == 0) ++samples;
    Germ1D out;
    out.alpha_ = alpha;
    out.fn_ = std::move(g);
    out.dfn_ = std::move(dg);
    const int c = samples / 2;
    out.x_.resize(samples);
    out.g_.resize(samples);
    out.dg_.resize(samples);
    for (int i = 0; i < samples; ++i) {
        double x = delta * (i - c) / c;
        out.x_[i] = x;
        out.g_[i] = out.fn_(x);
        out.dg_[i] = out.dfn_(x);
    }
    out.x_[c] = 0.0;
    out.finish();
    return out;
}

Germ1D Germ1D::from_samples(std::vector<double> x, std::vector<double> gx, double alpha) {
    const int n = static_cast<int>(x.size());
    if (n < 65 || n % 2 == 0 || gx.size() != x.size()) throw ArgumentError("germ samples must be an odd count >= 65");
    double h = (x.back() - x.front()) / (n - 1);
    for (int i = 0; i < n; ++i)
        if (std::abs(x[i] - (x.front() + i * h)) > 1e-9 * std::max(1.0, std::abs(x.back())))
            throw ArgumentError("germ samples must be uniformly spaced");
    if (std::abs(x[n / 2]) > 1e-12 * std::abs(x.back()) || std::abs(x.front() + x.back()) > 1e-9 * std::abs(x.back()))
        throw ArgumentError("germ interval must be symmetric about 0");
    Germ1D out;
    out.alpha_ = alpha;
    out.x_ = std::move(x);
    out.g_ = std::move(gx);
    out.dg_.resize(n);
    for (int i = 1; i + 1 < n; ++i) out.dg_[i] = (out.g_[i + 1] - out.g_[i - 1]) / (2.0 * h);
    out.dg_[0] = (-3.0 * out.g_[0] + 4.0 * out.g_[1] - out.g_[2]) / (2.0 * h);
    out.dg_[n - 1] = (3.0 * out.g_[n - 1] - 4.0 * out.g_[n - 2] + out.g_[n - 3]) / (2.0 * h);
    out.finish();
    return out;
}

void Germ1D::finish() {
    if (!(alpha_ > 0.0 && alpha_ < 1.0)) throw ArgumentError("germ Hölder exponent must lie in (0,1)");
    const int n = static_cast<int>(x_.size()), c = n / 2;
    for (double v : g_)
        if (!std::isfinite(v)) throw ArgumentError("non-finite germ sample");
    if (std::abs(g_[c]) > 1e-14) throw DomainError("germ must satisfy g(0) = 0");
    for (int i = 1; i < n; ++i)
        if (!(g_[i] > g_[i - 1])) throw MonotonicityError("germ must be strictly increasing");
    a_ = dg_[c];
    if (!(a_ > 0.0)) throw DomainError("germ must have g'(0) > 0");
    interp_ = std::make_shared<MonotoneCubic>(x_, g_);
    c_delta_ = holder_constant(delta());
}

double Germ1D::operator()(double x) const { return fn_ ? fn_(x) : (*interp_)(x); }
double Germ1D::derivative(double x) const { return dfn_ ? dfn_(x) : interp_->derivative(x); }

Germ1D Germ1D::restricted(double d, int samples) const {
    if (!(d > 0.0 && d <= delta() * (1.0 + 1e-12))) throw ArgumentError("restriction must shrink the interval");
    if (fn_) return from_function(fn_, dfn_, d, alpha_, samples);
    if (samples % 2 == 0) ++samples;
    const int c = samples / 2;
    std::vector<double> x(samples), gx(samples);
    for (int i = 0; i < samples; ++i) {
        x[i] = d * (i - c) / c;
        gx[i] = (*interp_)(x[i]);
    }
    x[c] = 0.0;
    gx[c] = 0.0;
    return from_samples(std::move(x), std::move(gx), alpha_);
}

double Germ1D::holder_constant(double d) const {
    const int n = static_cast<int>(x_.size()), c = n / 2;
    const double h = spacing();
    int m = std::min(c, static_cast<int>(std::floor(d / h + 1e-9)));
    int lo = c - m, hi = c + m;
    double best = 0.0;
    std::vector<int> scales;
    for (int s = 1; s < 2 * m; s *= 2) scales.push_back(s);
    if (m > 0) scales.push_back(2 * m);
    for (int s : scales)
        for (int i = lo; i + s <= hi; ++i)
            best = std::max(best, std::abs(dg_[i + s] - dg_[i]) / std::pow(s * h, alpha_));
    return best;
}

std::string Germ1D::to_csv() const {
    std::string out = "x,g\n";
    char buf[96];
    for (std::size_t i = 0; i < x_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x_[i], g_[i]);
        out += buf;
    }
    return out;
}

Germ1D Germ1D::from_csv(const std::string& text, double alpha) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> x, g;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find_first_of("xg") != std::string::npos && line.find_first_of("0123456789") == std::string::npos)
                continue;
        }
        double a, b;
        if (std::sscanf(line.c_str(), "%lf,%lf", &a, &b) != 2) throw ArgumentError("malformed germ CSV line: " + line);
        x.push_back(a);
        g.push_back(b);
    }
    return from_samples(std::move(x), std::move(g), alpha);
}

double contraction_bound(double a, double c, double alpha, double d) {
    double t = c * std::pow(d, alpha);
    return (std::pow(a + t, 1.0 + alpha) + t) / a;
}

GermNormalization normalize_germ(const Germ1D& g) {
    if (std::abs(g.a() - 1.0) < 1e-12) throw ArgumentError("parabolic germs (a = 1) are not supported");
    if (g.a() < 1.0) return {g, false};
    const double d = g.delta();
    if (!(g(-d) <= -d && g(d) >= d)) throw DomainError("expanding germ does not cover its interval");
    auto inv = [g](double y) {
        double lo = -g.delta(), hi = g.delta();
        for (int k = 0; k < 200 && hi - lo > 1e-17 * std::max(1.0, std::abs(y)); ++k) {
            double mid = 0.5 * (lo + hi);
            (g(mid) < y ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    auto dinv = [g, inv](double y) { return 1.0 / g.derivative(inv(y)); };
    auto exact0 = [inv](double y) { return y == 0.0 ? 0.0 : inv(y); };
    return {Germ1D::from_function(exact0, dinv, d, g.alpha(), static_cast<int>(g.x().size())), true};
}

DeltaChoice choose_delta(const Germ1D& g, const Config& cfg) {
    const double a = g.a();
    if (!(a > 0.0 && a < 1.0)) throw ArgumentError("choose_delta requires 0 < a < 1 (invert the germ first)");
    const double h = g.spacing();
    for (double d = g.delta(); d >= 64.0 * h; d *= 0.95) {
        double ds = h * std::floor(d / h + 1e-9);
        double c = g.holder_constant(ds);
        double f = contraction_bound(a, c, g.alpha(), ds);
        bool invariant = std::abs(g(ds)) <= ds && std::abs(g(-ds)) <= ds;
        if (f <= cfg.contraction_target && invariant) return {ds, f, c};
    }
    throw ResolutionError("no admissible delta at the germ's sample resolution");
}

double Linearization::inverse(double y) const {
    double lo = x.front(), hi = x.back();
    for (int k = 0; k < 200 && hi - lo > 1e-17; ++k) {
        double mid = 0.5 * (lo + hi);
        ((*interp)(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

nlohmann::json Linearization::to_json() const {
    return {{"delta", delta},       {"contraction_factor", contraction_factor},
            {"bound", bound},       {"iterations", iterations},
            {"residual", residual}, {"taylor2", taylor2},
            {"h_prime0", h_prime0}};
}

static double fit_taylor2(const std::vector<double>& x, const std::vector<double>& psi, double radius) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (std::abs(x[i]) <= radius) idx.push_back(i);
    const int n = static_cast<int>(idx.size()), p = 4;
    if (n < 2 * p) return 0.0;
    gsl_matrix* X = gsl_matrix_alloc(n, p);
    gsl_vector* y = gsl_vector_alloc(n);
    gsl_vector* c = gsl_vector_alloc(p);
    gsl_matrix* cov = gsl_matrix_alloc(p, p);
    for (int r = 0; r < n; ++r) {
        double t = x[idx[r]] / radius;
        for (int k = 0; k < p; ++k) gsl_matrix_set(X, r, k, std::pow(t, k + 2));
        gsl_vector_set(y, r, psi[idx[r]]);
    }
    double chisq;
    gsl_multifit_linear_workspace* ws = gsl_multifit_linear_alloc(n, p);
    gsl_multifit_linear(X, y, c, cov, &chisq, ws);
    double b2 = gsl_vector_get(c, 0) / (radius * radius);
    gsl_multifit_linear_free(ws);
    gsl_matrix_free(X);
    gsl_matrix_free(cov);
    gsl_vector_free(y);
    gsl_vector_free(c);
    return b2;
}

Linearization sternberg_linearize(const Germ1D& g, double tol, const Config& cfg, std::optional<double> delta) {
    const double a = g.a();
    if (!(a > 0.0 && a < 1.0)) throw ArgumentError("sternberg_linearize requires 0 < a < 1 (invert the germ first)");
    if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
    Linearization L;
    if (delta) {
        if (!(*delta > 0.0 && *delta <= g.delta())) throw ArgumentError("delta outside the germ interval");
        L.delta = *delta;
        double c = g.holder_constant(*delta);
        L.bound = contraction_bound(a, c, g.alpha(), *delta);
        if (!(std::abs(g(*delta)) <= *delta && std::abs(g(-*delta)) <= *delta))
            throw ArgumentError("interval is not invariant under the germ");
    } else {
        DeltaChoice dc = choose_delta(g, cfg);
        L.delta = dc.delta;
        L.bound = dc.factor;
    }
    int n = cfg.germ_samples;
    if (n % 2 == 0) ++n;
    const int c = n / 2;
    L.x.resize(n);
    std::vector<double> gx(n), star(n), psi(n, 0.0), next(n);
    for (int i = 0; i < n; ++i) {
        L.x[i] = L.delta * (i - c) / c;
        gx[i] = g(L.x[i]);
        star[i] = gx[i] - a * L.x[i];
    }
    L.x[c] = 0.0;
    gx[c] = 0.0;
    star[c] = 0.0;

    const int max_iter = 20000;
    int flat = 0;
    for (int it = 1;; ++it) {
        MonotoneCubic P(L.x, psi);
        double inc = 0.0;
        for (int i = 0; i < n; ++i) next[i] = (P(gx[i]) + star[i]) / a;
        // Multiples of h = x + psi are fixed by the operator; rescale to h'(0) = 1.
        const double hx = L.x[c + 1] - L.x[c];
        double s = (8.0 * (next[c + 1] - next[c - 1]) - (next[c + 2] - next[c - 2])) / (12.0 * hx);
        for (int i = 0; i < n; ++i) {
            next[i] = (L.x[i] + next[i]) / (1.0 + s) - L.x[i];
            inc = std::max(inc, std::abs(next[i] - psi[i]));
        }
        psi.swap(next);
        L.increments.push_back(inc);
        L.iterations = it;
        if (!std::isfinite(inc)) throw ContractionError("linearization diverged", L.increments);
        if (inc <= 0.1 * tol) break;
        if (it > 1 && inc > 0.999 * L.increments[it - 2])
            ++flat;
        else
            flat = 0;
        if (flat >= 10 || it >= max_iter) throw ContractionError("linearization stalled", L.increments);
    }

    // Geometric mean of the increment ratios above the rounding floor.
    {
        double floor = 1e3 * 2.2e-16 * std::max(1.0, L.delta);
        int first = 1, last = 0;
        for (int k = 0; k < static_cast<int>(L.increments.size()); ++k)
            if (L.increments[k] > floor) last = k;
        if (last > first)
            L.contraction_factor = std::pow(L.increments[last] / L.increments[first], 1.0 / (last - first));
        else
            L.contraction_factor = L.increments.size() > 1 ? L.increments[1] / std::max(L.increments[0], 1e-300) : 0.0;
    }

    L.h.resize(n);
    for (int i = 0; i < n; ++i) L.h[i] = L.x[i] + psi[i];
    L.interp = std::make_shared<MonotoneCubic>(L.x, L.h);
    MonotoneCubic P(L.x, psi);
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = L.x[i];
        res = std::max(res, std::abs(gx[i] + P(gx[i]) - a * (t + psi[i])));
        if (i + 1 < n) {
            double m = 0.5 * (L.x[i] + L.x[i + 1]);
            double gm = g(m);
            res = std::max(res, std::abs(gm + P(gm) - a * (m + P(m))));
        }
    }
    L.residual = res;
    double hstep = L.x[1] - L.x[0];
    L.h_prime0 = (L.h[c + 1] - L.h[c - 1]) / (2.0 * hstep);
    L.taylor2 = fit_taylor2(L.x, psi, L.delta / 4.0);
    return L;
}

KoenigsResult koenigs_oracle(const Germ1D& g, int n, const std::vector<double>& xs) {
    if (n < 1) throw ArgumentError("Koenigs oracle needs n >= 1");
    KoenigsResult out;
    out.x = xs;
    const double an = std::pow(g.a(), n);
    double xmax = 0.0;
    for (double x : xs) xmax = std::max(xmax, std::abs(x));
    out.partial = !(an * xmax > 1e-290);
    for (double x : xs) {
        double y = x;
        for (int k = 0; k < n; ++k) y = g(y);
        double v = y / an;
        if (!std::isfinite(v)) out.partial = true;
        out.h.push_back(v);
    }
    return out;
}

CircleMap conjugate_circle(const CircleMap& f, const MobiusMap& gamma) {
    return f.compose(CircleMap::from_mobius(gamma, f.size()).compose(f.inverse()));
}

std::vector<FixedPoint> circle_fixed_points(const CircleMap& g) {
    const int n = g.size();
    auto e = [&g](double t) { return std::remainder(g.lift(t) - t, 2.0 * pi); };
    std::vector<FixedPoint> out;
    for (int i = 0; i < n; ++i) {
        double t0 = 2.0 * pi * i / n, t1 = 2.0 * pi * (i + 1) / n;
        double e0 = e(t0), e1 = e(t1);
        if (std::abs(e0 - e1) >= pi) continue;
        if (e0 == 0.0) {
            out.push_back({t0, g.derivative(t0)});
            continue;
        }
        if ((e0 < 0.0) == (e1 < 0.0)) continue;
        if (e1 == 0.0) continue;
        double lo = t0, hi = t1, elo = e0;
        for (int k = 0; k < 100 && hi - lo > 1e-15; ++k) {
            double mid = 0.5 * (lo + hi), em = e(mid);
            if ((em < 0.0) == (elo < 0.0)) {
                lo = mid;
                elo = em;
            } else {
                hi = mid;
            }
        }
        double t = 0.5 * (lo + hi);
        out.push_back({t, g.derivative(t)});
    }
    return out;
}

nlohmann::json PromotionReport::to_json() const {
    auto ladder = [](const std::vector<HolderEntry>& l) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& e : l) j.push_back({{"alpha", e.alpha}, {"constant", e.constant}, {"slope", e.slope}, {"finite", e.finite}});
        return j;
    };
    return {{"status", status},
            {"reason", reason},
            {"target_alpha", target_alpha},
            {"multiplier", multiplier},
            {"reconstruction_error", reconstruction_error},
            {"hypothesis_holds", hypothesis_holds},
            {"hypothesis_scope", "conjugates of a single Mobius element only; uniform quasisymmetry of a subgroup is not checked"},
            {"promoted", promoted},
            {"conjugate_ladder", ladder(conjugate_ladder)},
            {"local_ladder", ladder(local_ladder)},
            {"global_ladder", ladder(global_ladder)},
            {"uniformly_quasisymmetric_checked", false}};
}

// Samples within `span` nodes of the angle theta on a periodic grid.
static std::vector<double> window(const std::vector<double>& v, double theta, int span) {
    const int n = static_cast<int>(v.size());
    int center = static_cast<int>(std::lround(theta / (2.0 * pi / n)));
    std::vector<double> out;
    for (int k = -span; k <= span; ++k) out.push_back(v[((center + k) % n + n) % n]);
    return out;
}

static bool finite_at(const std::vector<HolderEntry>& l, double alpha) {
    for (const auto& e : l)
        if (std::abs(e.alpha - alpha) < 1e-12) return e.finite;
    return false;
}

PromotionReport promotion_experiment(const CircleMap& f, const MobiusMap& gamma, double r_target, const Config& cfg) {
    if (classify(gamma) != MobiusClass::hyperbolic) throw ClassificationError("promotion experiment needs a hyperbolic element");
    if (!(r_target > 1.0)) throw ArgumentError("r_target must exceed 1");
    PromotionReport rep;
    rep.target_alpha = std::min(r_target - 1.0, 0.95);
    std::vector<double> alphas;
    for (int k = 1; k <= 9; ++k) alphas.push_back(0.1 * k);
    if (std::find_if(alphas.begin(), alphas.end(), [&](double a) { return std::abs(a - rep.target_alpha) < 1e-12; }) ==
        alphas.end())
        alphas.push_back(rep.target_alpha);
    std::sort(alphas.begin(), alphas.end());

    CircleMap g2 = conjugate_circle(f, gamma);
    CircleMap g1 = CircleMap::from_mobius(gamma, f.size());
    auto attracting = [](const CircleMap& g) {
        for (const auto& p : circle_fixed_points(g))
            if (p.derivative < 1.0) return p;
        throw ClassificationError("no attracting fixed point found");
    };
    FixedPoint p1 = attracting(g1);
    const double q1 = f.lift(p1.theta);
    rep.multiplier = p1.derivative;

    rep.conjugate_ladder = holder_ladder(g2.derivative_samples(), g2.spacing(), alphas, true, cfg.holder_growth_tol);
    rep.global_ladder = holder_ladder(f.derivative_samples(), f.spacing(), alphas, true, cfg.holder_growth_tol);
    // Smooth variation elsewhere on the circle can hide a local loss of
    // regularity, so the fixed point neighbourhood is checked on its own.
    auto conj_local = holder_ladder(window(g2.derivative_samples(), q1, 64), g2.spacing(), alphas, false,
                                    cfg.holder_growth_tol);
    rep.hypothesis_holds = finite_at(rep.conjugate_ladder, rep.target_alpha) && finite_at(conj_local, rep.target_alpha);
    if (!rep.hypothesis_holds) {
        rep.status = "aborted";
        rep.reason = "conjugated map is not C^{1+alpha} at grid scale";
        return rep;
    }

    auto local_germ = [&](const CircleMap& g, double p) {
        double base = g.lift(p);
        return Germ1D::from_function([g, p, base](double x) { return x == 0.0 ? 0.0 : g.lift(p + x) - base; },
                                     [g, p](double x) { return g.derivative(p + x); }, 0.3, rep.target_alpha,
                                     cfg.germ_samples);
    };
    Germ1D G1 = local_germ(g1, p1.theta);
    Germ1D G2 = local_germ(g2, q1);
    Linearization h1 = sternberg_linearize(G1, 1e-10, cfg);
    Linearization h2 = sternberg_linearize(G2, 1e-10, cfg);

    const double c = f.derivative(p1.theta);
    const double d = 0.5 * std::min(h1.delta, h2.delta);
    for (int k = -64; k <= 64; ++k) {
        double x = d * k / 64.0;
        double y = c * h1(x);
        if (std::abs(y) > h2.delta) continue;
        double fhat = h2.inverse(y);
        double fact = f.lift(p1.theta + x) - q1;
        rep.reconstruction_error = std::max(rep.reconstruction_error, std::abs(fhat - fact));
    }

    int span = std::max(16, static_cast<int>(d / f.spacing()));
    rep.local_ladder = holder_ladder(window(f.derivative_samples(), p1.theta, span), f.spacing(), alphas, false,
                                     cfg.holder_growth_tol);
    rep.promoted = !finite_at(rep.local_ladder, rep.target_alpha) || finite_at(rep.global_ladder, rep.target_alpha);
    rep.status = "ok";
    return rep;
}

}  // namespace teich
