#pragma once

#include <functional>
#include <vector>

#include "teich/grid.hpp"
#include "teich/mobius.hpp"

namespace teich {

// Orientation-preserving circle homeomorphism stored as a lift G with
// G(theta + 2 pi) = G(theta) + 2 pi, sampled with its derivative on a
// uniform angular grid and evaluated by cubic Hermite interpolation.
class CircleMap {
public:
    CircleMap() = default;
    CircleMap(std::vector<double> lift, std::vector<double> derivative);

    static CircleMap identity(int n = 2048);
    static CircleMap from_functions(const std::function<double(double)>& lift,
                                    const std::function<double(double)>& derivative, int n = 2048);
    static CircleMap from_mobius(const MobiusMap& m, int n = 2048);

    int size() const { return static_cast<int>(lift_.size()); }
    double spacing() const { return 2.0 * pi / size(); }
    const std::vector<double>& lift_samples() const { return lift_; }
    const std::vector<double>& derivative_samples() const { return deriv_; }

    double lift(double theta) const;
    double derivative(double theta) const;
    cplx apply(cplx z) const { return std::polar(1.0, lift(std::arg(z))); }
    // Solves lift(theta) = phi by bisection; MonotonicityError on failure.
    double inverse_lift(double phi) const;

    // this o inner, this o m, m o this, and the sampled inverse.
    CircleMap compose(const CircleMap& inner) const;
    CircleMap pre_mobius(const MobiusMap& m) const;
    CircleMap post_mobius(const MobiusMap& m) const;
    CircleMap inverse() const;

    // Strictly increasing samples and positive derivative.
    bool certify_monotone() const;
    double sup_distance(const CircleMap& other) const;

private:
    std::vector<double> lift_;
    std::vector<double> deriv_;
};

struct Normalization {
    MobiusMap m;
    CircleMap normalized;
};

}  // namespace teich
