#include "teich/circle_map.hpp"

#include <algorithm>
#include <cmath>

#include "teich/errors.hpp"

namespace teich {

namespace {

// Continuous lift of samples of a circle-valued function, starting in (-pi, pi].
std::vector<double> unwrap(const std::vector<double>& raw) {
    std::vector<double> out(raw.size());
    out[0] = std::remainder(raw[0], 2.0 * pi);
    for (std::size_t i = 1; i < raw.size(); ++i) {
        double d = std::remainder(raw[i] - raw[i - 1], 2.0 * pi);
        out[i] = out[i - 1] + d;
    }
    return out;
}

}  // namespace

CircleMap::CircleMap(std::vector<double> lift, std::vector<double> derivative)
    : lift_(std::move(lift)), deriv_(std::move(derivative)) {
    if (lift_.size() < 8 || lift_.size() != deriv_.size()) throw ArgumentError("circle map needs matching samples");
}

CircleMap CircleMap::identity(int n) {
    return from_functions([](double t) { return t; }, [](double) { return 1.0; }, n);
}

CircleMap CircleMap::from_functions(const std::function<double(double)>& lift,
                                    const std::function<double(double)>& derivative, int n) {
    std::vector<double> g(n), d(n);
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * pi * i / n;
        g[i] = lift(t);
        d[i] = derivative(t);
    }
    return {std::move(g), std::move(d)};
}

CircleMap CircleMap::from_mobius(const MobiusMap& m, int n) {
    std::vector<double> raw(n), d(n);
    for (int i = 0; i < n; ++i) {
        cplx z = std::polar(1.0, 2.0 * pi * i / n);
        raw[i] = std::arg(m(z));
        d[i] = std::abs(m.derivative(z));
    }
    return {unwrap(raw), std::move(d)};
}

double CircleMap::lift(double theta) const {
    const int n = size();
    const double h = spacing();
    double t = theta / h;
    double fl = std::floor(t);
    double x = t - fl;
    long long i = static_cast<long long>(fl);
    long long wraps = i >= 0 ? i / n : -((-i + n - 1) / n);
    int k = static_cast<int>(i - wraps * n);
    int k1 = (k + 1) % n;
    double g0 = lift_[k] + 2.0 * pi * wraps;
    double g1 = lift_[k1] + 2.0 * pi * (wraps + (k1 == 0 ? 1 : 0));
    double h00 = (1 + 2 * x) * (1 - x) * (1 - x), h10 = x * (1 - x) * (1 - x);
    double h01 = x * x * (3 - 2 * x), h11 = x * x * (x - 1);
    return h00 * g0 + h10 * h * deriv_[k] + h01 * g1 + h11 * h * deriv_[k1];
}

double CircleMap::derivative(double theta) const {
    const int n = size();
    const double h = spacing();
    double t = theta / h;
    double fl = std::floor(t);
    double x = t - fl;
    long long i = static_cast<long long>(fl);
    long long wraps = i >= 0 ? i / n : -((-i + n - 1) / n);
    int k = static_cast<int>(i - wraps * n);
    int k1 = (k + 1) % n;
    double g0 = lift_[k];
    double g1 = lift_[k1] + (k1 == 0 ? 2.0 * pi : 0.0);
    double d00 = 6 * x * x - 6 * x, d10 = 3 * x * x - 4 * x + 1, d01 = -d00, d11 = 3 * x * x - 2 * x;
    return (d00 * g0 + d01 * g1) / h + d10 * deriv_[k] + d11 * deriv_[k1];
}

double CircleMap::inverse_lift(double phi) const {
    // lift(theta) - theta is periodic, so a bracket one period wide suffices.
    double base = phi - (lift_[0]);
    double lo = base - 2.0 * pi, hi = base + 2.0 * pi;
    double flo = lift(lo) - phi, fhi = lift(hi) - phi;
    for (int k = 0; k < 8 && flo > 0; ++k) {
        lo -= 2.0 * pi;
        flo = lift(lo) - phi;
    }
    for (int k = 0; k < 8 && fhi < 0; ++k) {
        hi += 2.0 * pi;
        fhi = lift(hi) - phi;
    }
    if (flo > 0 || fhi < 0) throw MonotonicityError("inverse bisection could not bracket the target");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = lift(mid) - phi;
        if (fm < 0)
            lo = mid;
        else
            hi = mid;
    }
    double mid = 0.5 * (lo + hi);
    if (std::abs(lift(mid) - phi) > 1e-9) throw MonotonicityError("inverse bisection failed: lift not monotone");
    return mid;
}

CircleMap CircleMap::compose(const CircleMap& inner) const {
    const int n = std::max(size(), inner.size());
    std::vector<double> g(n), d(n);
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * pi * i / n;
        double u = inner.lift(t);
        g[i] = lift(u);
        d[i] = derivative(u) * inner.derivative(t);
    }
    return {std::move(g), std::move(d)};
}

CircleMap CircleMap::pre_mobius(const MobiusMap& m) const { return compose(from_mobius(m, size())); }

CircleMap CircleMap::post_mobius(const MobiusMap& m) const { return from_mobius(m, size()).compose(*this); }

CircleMap CircleMap::inverse() const {
    const int n = size();
    std::vector<double> g(n), d(n);
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * pi * i / n;
        g[i] = inverse_lift(t);
        d[i] = 1.0 / derivative(g[i]);
    }
    return {std::move(g), std::move(d)};
}

bool CircleMap::certify_monotone() const {
    for (std::size_t i = 0; i < lift_.size(); ++i) {
        if (!(deriv_[i] > 0.0)) return false;
        double next = i + 1 < lift_.size() ? lift_[i + 1] : lift_[0] + 2.0 * pi;
        if (!(next > lift_[i])) return false;
    }
    return true;
}

double CircleMap::sup_distance(const CircleMap& other) const {
    const int n = std::max(size(), other.size());
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * pi * i / n;
        m = std::max(m, std::abs(std::remainder(lift(t) - other.lift(t), 2.0 * pi)));
    }
    return m;
}

}  // namespace teich
