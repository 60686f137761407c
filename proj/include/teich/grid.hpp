#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace teich {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

struct GridSpec {
    int n_theta = 256;
    std::vector<double> radii_inner;       // increasing, in (0,1)
    std::vector<double> radii_outer;       // decreasing toward 1, > 1
    std::vector<double> boundary_offsets;  // eps_j = eps0 * q^j

    // Uniform interior circles up to 1 - eps0, then geometric circles
    // 1 -+ eps0 q^(j/sub) down to min_offset on both sides of the circle.
    static GridSpec standard(int n_theta = 256, double eps0 = 0.2, double q = 0.7,
                             int rungs = 9, double r_max = 4.0, int sub = 4,
                             double min_offset = 1.5e-3);

    void validate() const;
    double theta(int i) const { return 2.0 * pi * i / n_theta; }
    double r_max() const { return radii_outer.empty() ? 1.0 : radii_outer.front(); }
    // Radii |w| of the far chart w = 1/z, covering |z| >= r_max.
    std::vector<double> far_radii() const;

    // Band index of a boundary distance: bands are centered on eps_j with
    // geometric-midpoint edges.
    std::optional<int> band_of(double offset) const;
    int bands() const { return static_cast<int>(boundary_offsets.size()); }

    nlohmann::json to_json() const;
    static GridSpec from_json(const nlohmann::json& j);
    std::string hash() const;

    bool operator==(const GridSpec& o) const = default;
};

enum class Chart { disk, exterior, far };
std::string to_string(Chart c);
Chart chart_from_string(const std::string& s);

// Complex samples on the circles of one chart, indexed (circle, angle).
// disk: |z| = radii_inner[j]; exterior: |z| = radii_outer[j];
// far: |w| = far_radii()[j] with w = 1/z.
class ComplexGridFunction {
public:
    ComplexGridFunction() = default;
    ComplexGridFunction(GridSpec spec, Chart chart);
    ComplexGridFunction(GridSpec spec, Chart chart, std::vector<cplx> values);

    const GridSpec& spec() const { return spec_; }
    Chart chart() const { return chart_; }
    const std::vector<double>& radii() const { return radii_; }
    int circles() const { return static_cast<int>(radii_.size()); }
    int n() const { return spec_.n_theta; }
    std::size_t size() const { return values_.size(); }

    cplx& at(int j, int i) { return values_[static_cast<std::size_t>(j) * n() + i]; }
    cplx at(int j, int i) const { return values_[static_cast<std::size_t>(j) * n() + i]; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    // Chart coordinate of sample (j, i).
    cplx point(int j, int i) const;
    double max_abs() const;

    std::string to_csv() const;
    static ComplexGridFunction from_csv(const GridSpec& spec, Chart chart, const std::string& text);

private:
    GridSpec spec_;
    Chart chart_ = Chart::disk;
    std::vector<double> radii_;
    std::vector<cplx> values_;
};

double hyperbolic_density_disk(cplx z);
double hyperbolic_density_exterior(cplx z);
cplx reflect(cplx z);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};
SlopeFit log_log_slope_fit(const std::vector<std::pair<double, double>>& pairs);

// Cubic Lagrange interpolation on a polar grid: periodic in angle,
// clamped four-point stencils in radius (extrapolates past the ends).
class PolarInterpolator {
public:
    PolarInterpolator() = default;
    PolarInterpolator(std::vector<double> radii, int n_theta, std::vector<cplx> values);
    cplx operator()(double r, double theta) const;
    cplx at_point(cplx z) const { return (*this)(std::abs(z), std::arg(z)); }
    bool empty() const { return radii_.empty(); }

private:
    std::vector<double> radii_;
    int n_ = 0;
    std::vector<cplx> values_;
};

std::uint64_t fnv1a(const std::string& s);

}  // namespace teich
