#include "teich/numerics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_interp.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>

#include "teich/errors.hpp"
#include "teich/grid.hpp"

namespace teich {

namespace {
// Failures are reported through return codes and checked by the callers.
[[maybe_unused]] const bool gsl_quiet = [] {
    gsl_set_error_handler_off();
    return true;
}();
}  // namespace

GaussRule gauss_legendre(int n) {
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
    GaussRule rule;
    for (int i = 0; i < n; ++i) {
        double x = 0, w = 0;
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &x, &w, t);
        rule.nodes.push_back(x);
        rule.weights.push_back(w);
    }
    gsl_integration_glfixed_table_free(t);
    return rule;
}

void lagrange_weights(const double* xs, int m, double x, double* out) {
    for (int a = 0; a < m; ++a) {
        double w = 1.0;
        for (int b = 0; b < m; ++b)
            if (b != a) w *= (x - xs[b]) / (xs[a] - xs[b]);
        out[a] = w;
    }
}

std::vector<double> cumulative_integral(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (n < 2 || y.size() != x.size()) throw ArgumentError("cumulative_integral needs matching samples");
    static const GaussRule rule = gauss_legendre(6);
    const int m = std::min(n, 4);
    std::vector<double> out(n, 0.0);
    double w[4];
    for (int k = 0; k + 1 < n; ++k) {
        int s = std::clamp(k - 1, 0, n - m);
        double a = x[k], b = x[k + 1], acc = 0.0;
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
            double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[g];
            lagrange_weights(&x[s], m, t, w);
            double v = 0.0;
            for (int c = 0; c < m; ++c) v += w[c] * y[s + c];
            acc += rule.weights[g] * v;
        }
        out[k + 1] = out[k] + 0.5 * (b - a) * acc;
    }
    return out;
}

namespace {

struct MinimizeCtx {
    const std::function<double(double, double)>* f;
};

double neg_objective(const gsl_vector* v, void* params) {
    auto* ctx = static_cast<MinimizeCtx*>(params);
    double val = (*ctx->f)(gsl_vector_get(v, 0), gsl_vector_get(v, 1));
    return std::isfinite(val) ? -val : 0.0;
}

}  // namespace

std::pair<double, double> maximize_2d(const std::function<double(double, double)>& f, double x0, double y0,
                                      double step, int max_iter, double size_tol) {
    MinimizeCtx ctx{&f};
    gsl_multimin_function fn{&neg_objective, 2, &ctx};
    gsl_vector* x = gsl_vector_alloc(2);
    gsl_vector* ss = gsl_vector_alloc(2);
    gsl_vector_set(x, 0, x0);
    gsl_vector_set(x, 1, y0);
    gsl_vector_set_all(ss, step);
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
    gsl_multimin_fminimizer_set(s, &fn, x, ss);
    for (int it = 0; it < max_iter; ++it) {
        if (gsl_multimin_fminimizer_iterate(s)) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tol) == GSL_SUCCESS) break;
    }
    std::pair<double, double> best{gsl_vector_get(s->x, 0), gsl_vector_get(s->x, 1)};
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(x);
    gsl_vector_free(ss);
    return best;
}

std::vector<HolderEntry> holder_ladder(const std::vector<double>& v, double spacing,
                                       const std::vector<double>& alphas, bool periodic, double growth_tol,
                                       int fine_scales) {
    const int n = static_cast<int>(v.size());
    if (n < 16) throw ArgumentError("holder_ladder needs at least 16 samples");
    std::vector<int> scales;
    for (int s = 1; s <= n / 4; s *= 2) scales.push_back(s);
    std::vector<double> diffs(scales.size(), 0.0);
    for (std::size_t k = 0; k < scales.size(); ++k) {
        int s = scales[k];
        double m = 0.0;
        int limit = periodic ? n : n - s;
        for (int i = 0; i < limit; ++i) m = std::max(m, std::abs(v[(i + s) % n] - v[i]));
        diffs[k] = m;
    }
    std::vector<HolderEntry> out;
    for (double alpha : alphas) {
        HolderEntry e;
        e.alpha = alpha;
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t k = 0; k < scales.size(); ++k) {
            double h = scales[k] * spacing;
            double c = diffs[k] / std::pow(h, alpha);
            e.constant = std::max(e.constant, c);
            if (static_cast<int>(k) < fine_scales && c > 0.0) pairs.emplace_back(h, c);
        }
        double floor = 1e-13 * (1.0 + *std::max_element(v.begin(), v.end(), [](double a, double b) {
            return std::abs(a) < std::abs(b);
        }));
        if (pairs.size() >= 4 && diffs[0] > floor) {
            e.slope = log_log_slope_fit(pairs).slope;
            e.finite = e.slope >= -growth_tol;
        }
        out.push_back(e);
    }
    return out;
}

struct MonotoneCubic::Impl {
    std::vector<double> x, y;
    gsl_interp* interp = nullptr;
    ~Impl() {
        if (interp) gsl_interp_free(interp);
    }
};

MonotoneCubic::MonotoneCubic(const std::vector<double>& x, const std::vector<double>& y)
    : impl_(std::make_unique<Impl>()) {
    if (x.size() != y.size() || x.size() < 3) throw ArgumentError("MonotoneCubic needs >= 3 matching samples");
    impl_->x = x;
    impl_->y = y;
    impl_->interp = gsl_interp_alloc(gsl_interp_steffen, x.size());
    gsl_interp_init(impl_->interp, impl_->x.data(), impl_->y.data(), x.size());
}

MonotoneCubic::~MonotoneCubic() = default;
MonotoneCubic::MonotoneCubic(MonotoneCubic&&) noexcept = default;
MonotoneCubic& MonotoneCubic::operator=(MonotoneCubic&&) noexcept = default;

double MonotoneCubic::operator()(double x) const {
    const auto& xs = impl_->x;
    double xc = std::clamp(x, xs.front(), xs.back());
    double val = 0.0;
    gsl_interp_eval_e(impl_->interp, xs.data(), impl_->y.data(), xc, nullptr, &val);
    if (x != xc) val += derivative(xc) * (x - xc);
    return val;
}

double MonotoneCubic::derivative(double x) const {
    const auto& xs = impl_->x;
    double xc = std::clamp(x, xs.front(), xs.back());
    double d = 0.0;
    gsl_interp_eval_deriv_e(impl_->interp, xs.data(), impl_->y.data(), xc, nullptr, &d);
    return d;
}

}  // namespace teich
