#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "teich/circle_map.hpp"
#include "teich/config.hpp"
#include "teich/mobius.hpp"
#include "teich/numerics.hpp"

namespace teich {

// Germ g on [-delta, delta] with g(0) = 0, sampled uniformly (odd count, so
// 0 is a node) with derivative samples. a = g'(0); c_delta is the
// measured alpha-Hölder constant of g' on the interval.
class Germ1D {
public:
    using Fn = std::function<double(double)>;

    static Germ1D from_function(Fn g, Fn dg, double delta, double alpha, int samples = 4001);
    // Derivative by centered differences of the samples.
    static Germ1D from_samples(std::vector<double> x, std::vector<double> gx, double alpha);

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& values() const { return g_; }
    const std::vector<double>& derivative_values() const { return dg_; }
    double delta() const { return x_.back(); }
    double spacing() const { return x_[1] - x_[0]; }
    double a() const { return a_; }
    double alpha() const { return alpha_; }
    double c_delta() const { return c_delta_; }
    bool has_function() const { return static_cast<bool>(fn_); }

    double operator()(double x) const;
    double derivative(double x) const;
    // The same germ resampled on [-delta, delta] (delta <= current).
    Germ1D restricted(double delta, int samples) const;
    // Hölder constant of g' restricted to [-d, d].
    double holder_constant(double d) const;

    std::string to_csv() const;
    static Germ1D from_csv(const std::string& text, double alpha);

private:
    Germ1D() = default;
    void finish();

    std::vector<double> x_, g_, dg_;
    double a_ = 0.0, alpha_ = 0.5, c_delta_ = 0.0;
    Fn fn_, dfn_;
    std::shared_ptr<MonotoneCubic> interp_;
};

// (1/a)[(a + c d^alpha)^{1+alpha} + c d^alpha]
double contraction_bound(double a, double c, double alpha, double d);

struct GermNormalization {
    Germ1D germ;
    bool inverted = false;
};
// Replaces g by g^{-1} when a > 1.
GermNormalization normalize_germ(const Germ1D& g);

struct DeltaChoice {
    double delta = 0.0;
    double factor = 0.0;
    double c_delta = 0.0;
};
DeltaChoice choose_delta(const Germ1D& g, const Config& cfg = default_config());

struct Linearization {
    double delta = 0.0;
    double contraction_factor = 0.0;  // measured from the sup increments
    double bound = 0.0;               // analytic bound at delta
    int iterations = 0;
    double residual = 0.0;            // sup |h(g(x)) - a h(x)| on nodes and midpoints
    double taylor2 = 0.0;
    double h_prime0 = 1.0;
    std::vector<double> x, h;
    std::vector<double> increments;
    std::shared_ptr<MonotoneCubic> interp;
    double operator()(double t) const { return (*interp)(t); }
    double inverse(double y) const;
    nlohmann::json to_json() const;
};
Linearization sternberg_linearize(const Germ1D& g, double tol, const Config& cfg = default_config(),
                                  std::optional<double> delta = std::nullopt);

struct KoenigsResult {
    std::vector<double> x, h;
    bool partial = false;
};
KoenigsResult koenigs_oracle(const Germ1D& g, int n, const std::vector<double>& xs);

CircleMap conjugate_circle(const CircleMap& f, const MobiusMap& gamma);

struct FixedPoint {
    double theta = 0.0;
    double derivative = 0.0;
};
std::vector<FixedPoint> circle_fixed_points(const CircleMap& g);

struct PromotionReport {
    std::string status;  // ok | aborted
    std::string reason;
    double target_alpha = 0.0;
    double multiplier = 0.0;
    double reconstruction_error = 0.0;
    std::vector<HolderEntry> conjugate_ladder, local_ladder, global_ladder;
    bool hypothesis_holds = false;
    bool promoted = false;
    nlohmann::json to_json() const;
};
PromotionReport promotion_experiment(const CircleMap& f, const MobiusMap& gamma, double r_target,
                                     const Config& cfg = default_config());

}  // namespace teich
