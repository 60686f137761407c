#pragma once

#include <exception>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace teich {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Weights of the Lagrange basis through nodes xs evaluated at x.
void lagrange_weights(const double* xs, int m, double x, double* out);

// Cumulative integral of samples y(x) on strictly increasing nodes x using
// local cubic interpolants; out[k] = integral from x[0] to x[k].
std::vector<double> cumulative_integral(const std::vector<double>& x, const std::vector<double>& y);

// Nelder-Mead maximization of a function of two reals from a start point.
std::pair<double, double> maximize_2d(const std::function<double(double, double)>& f, double x0, double y0,
                                      double step, int max_iter = 400, double size_tol = 1e-12);

struct HolderEntry {
    double alpha = 0.0;
    double constant = 0.0;  // sup over dyadic pairs
    double slope = 0.0;     // fine-scale growth exponent of the per-scale constants
    bool finite = true;
};

// Dyadic Hölder ladder of uniformly spaced samples. Pairs (i, i + 2^k) for
// all k with 2^k <= n/4. A ladder entry is declared infinite when the
// per-scale constants grow toward the finest scales faster than
// growth_tol in log-log slope.
std::vector<HolderEntry> holder_ladder(const std::vector<double>& v, double spacing,
                                       const std::vector<double>& alphas, bool periodic,
                                       double growth_tol = 0.05, int fine_scales = 4);

// Monotone cubic (Steffen) interpolant on increasing nodes.
class MonotoneCubic {
public:
    MonotoneCubic(const std::vector<double>& x, const std::vector<double>& y);
    ~MonotoneCubic();
    MonotoneCubic(const MonotoneCubic&) = delete;
    MonotoneCubic& operator=(const MonotoneCubic&) = delete;
    MonotoneCubic(MonotoneCubic&&) noexcept;
    MonotoneCubic& operator=(MonotoneCubic&&) noexcept;

    double operator()(double x) const;
    double derivative(double x) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// OpenMP loop over [0, n) that rethrows the exception of the lowest failing
// index after the loop, so failures are reported deterministically.
template <class F>
void parallel_for(int n, F&& body) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < n; ++k) {
        try {
            body(k);
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace teich
