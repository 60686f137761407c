#include "teich/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "teich/errors.hpp"

namespace teich {

GridSpec GridSpec::standard(int n_theta, double eps0, double q, int rungs, double r_max, int sub,
                            double min_offset) {
    GridSpec g;
    g.n_theta = n_theta;
    const double step = 1.0 / 64.0;
    for (int k = 1; k * step < 1.0 - eps0 - 0.5 * step; ++k) g.radii_inner.push_back(k * step);
    std::vector<double> offsets;
    for (int j = 0;; ++j) {
        double off = eps0 * std::pow(q, static_cast<double>(j) / sub);
        if (off < min_offset) break;
        offsets.push_back(off);
    }
    for (double off : offsets) g.radii_inner.push_back(1.0 - off);

    for (double r : {4.0, 3.5, 3.0, 2.5, 2.0, 1.75, 1.5}) {
        if (r <= r_max && r > 1.0 + eps0 + 0.05) g.radii_outer.push_back(r);
    }
    if (g.radii_outer.empty() || g.radii_outer.front() < r_max) {
        g.radii_outer.insert(g.radii_outer.begin(), r_max);
    }
    for (double off : offsets) g.radii_outer.push_back(1.0 + off);

    for (int j = 0; j < rungs; ++j) g.boundary_offsets.push_back(eps0 * std::pow(q, static_cast<double>(j)));
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (n_theta < 64 || (n_theta & (n_theta - 1)) != 0)
        throw ArgumentError("n_theta must be a power of two >= 64");
    if (radii_inner.size() < 4) throw ArgumentError("need at least 4 inner radii");
    for (std::size_t j = 0; j < radii_inner.size(); ++j) {
        double r = radii_inner[j];
        if (!(r > 0.0 && r < 1.0)) throw ArgumentError("inner radius outside (0,1)");
        if (j > 0 && !(r > radii_inner[j - 1])) throw ArgumentError("inner radii not increasing");
    }
    if (radii_outer.size() < 4) throw ArgumentError("need at least 4 outer radii");
    for (std::size_t j = 0; j < radii_outer.size(); ++j) {
        double r = radii_outer[j];
        if (!(r > 1.0)) throw ArgumentError("outer radius not > 1");
        if (j > 0 && !(r < radii_outer[j - 1])) throw ArgumentError("outer radii not decreasing");
    }
    if (boundary_offsets.empty()) throw ArgumentError("boundary_offsets empty");
    for (std::size_t j = 0; j < boundary_offsets.size(); ++j) {
        double e = boundary_offsets[j];
        if (!(e > 0.0)) throw ArgumentError("boundary offset not positive");
        if (j > 0 && !(e < boundary_offsets[j - 1]))
            throw ArgumentError("boundary offsets not decreasing");
    }
}

std::vector<double> GridSpec::far_radii() const {
    std::vector<double> out;
    const int m = 8;
    for (int k = 1; k <= m; ++k) out.push_back(k / (m * r_max()));
    return out;
}

std::optional<int> GridSpec::band_of(double offset) const {
    const auto& e = boundary_offsets;
    const int J = bands();
    if (J == 0 || !(offset > 0.0)) return std::nullopt;
    for (int j = 0; j < J; ++j) {
        double hi = j > 0 ? std::sqrt(e[j - 1] * e[j]) : (J > 1 ? e[0] * std::sqrt(e[0] / e[1]) : 2 * e[0]);
        double lo = j + 1 < J ? std::sqrt(e[j] * e[j + 1])
                              : (J > 1 ? e[j] * std::sqrt(e[j] / e[j - 1]) : 0.5 * e[0]);
        if (offset > lo && offset <= hi) return j;
    }
    return std::nullopt;
}

nlohmann::json GridSpec::to_json() const {
    return {{"n_theta", n_theta},
            {"radii_inner", radii_inner},
            {"radii_outer", radii_outer},
            {"boundary_offsets", boundary_offsets}};
}

GridSpec GridSpec::from_json(const nlohmann::json& j) {
    GridSpec g;
    try {
        g.n_theta = j.at("n_theta").get<int>();
        g.radii_inner = j.at("radii_inner").get<std::vector<double>>();
        g.radii_outer = j.at("radii_outer").get<std::vector<double>>();
        g.boundary_offsets = j.at("boundary_offsets").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& ex) {
        throw ArgumentError(std::string("malformed grid json: ") + ex.what());
    }
    g.validate();
    return g;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string GridSpec::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json().dump())));
    return buf;
}

std::string to_string(Chart c) {
    switch (c) {
        case Chart::disk: return "disk";
        case Chart::exterior: return "exterior";
        case Chart::far: return "far";
    }
    return "disk";
}

Chart chart_from_string(const std::string& s) {
    if (s == "disk") return Chart::disk;
    if (s == "exterior") return Chart::exterior;
    if (s == "far") return Chart::far;
    throw ArgumentError("unknown chart: " + s);
}

static std::vector<double> chart_radii(const GridSpec& spec, Chart chart) {
    switch (chart) {
        case Chart::disk: return spec.radii_inner;
        case Chart::exterior: return spec.radii_outer;
        case Chart::far: return spec.far_radii();
    }
    return {};
}

ComplexGridFunction::ComplexGridFunction(GridSpec spec, Chart chart)
    : spec_(std::move(spec)), chart_(chart), radii_(chart_radii(spec_, chart)),
      values_(radii_.size() * static_cast<std::size_t>(spec_.n_theta)) {}

ComplexGridFunction::ComplexGridFunction(GridSpec spec, Chart chart, std::vector<cplx> values)
    : spec_(std::move(spec)), chart_(chart), radii_(chart_radii(spec_, chart)), values_(std::move(values)) {
    if (values_.size() != radii_.size() * static_cast<std::size_t>(spec_.n_theta))
        throw ArgumentError("value count does not match circles x n_theta");
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ArgumentError("non-finite sample");
}

cplx ComplexGridFunction::point(int j, int i) const { return std::polar(radii_[j], spec_.theta(i)); }

double ComplexGridFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::string ComplexGridFunction::to_csv() const {
    std::string out = "circle_index,angle_index,re,im\n";
    char buf[96];
    for (int j = 0; j < circles(); ++j)
        for (int i = 0; i < n(); ++i) {
            cplx v = at(j, i);
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", j, i, v.real(), v.imag());
            out += buf;
        }
    return out;
}

ComplexGridFunction ComplexGridFunction::from_csv(const GridSpec& spec, Chart chart, const std::string& text) {
    ComplexGridFunction f(spec, chart);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line.rfind("circle_index", 0) != 0) throw ArgumentError("csv header missing");
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int j = 0, i = 0;
        double re = 0, im = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &j, &i, &re, &im) != 4)
            throw ArgumentError("bad csv row: " + line);
        if (j < 0 || j >= f.circles() || i < 0 || i >= f.n()) throw ArgumentError("csv index out of range");
        f.at(j, i) = {re, im};
        ++count;
    }
    if (count != f.size()) throw ArgumentError("csv row count does not match grid");
    return f;
}

double hyperbolic_density_disk(cplx z) {
    double a = std::norm(z);
    if (!(a < 1.0)) throw DomainError("hyperbolic_density_disk requires |z| < 1");
    return 2.0 / (1.0 - a);
}

double hyperbolic_density_exterior(cplx z) {
    double a = std::norm(z);
    if (!(a > 1.0)) throw DomainError("hyperbolic_density_exterior requires |z| > 1");
    return 2.0 / (a - 1.0);
}

cplx reflect(cplx z) {
    if (z == cplx(0.0, 0.0)) throw DomainError("reflect(0) is infinity");
    return 1.0 / std::conj(z);
}

SlopeFit log_log_slope_fit(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 4) throw ArgumentError("slope fit needs at least 4 pairs");
    const double n = static_cast<double>(pairs.size());
    double sx = 0, sy = 0;
    for (auto [s, v] : pairs) {
        if (!(s > 0.0) || !(v > 0.0)) throw ArgumentError("slope fit needs positive entries");
        sx += std::log(s);
        sy += std::log(v);
    }
    double mx = sx / n, my = sy / n, sxx = 0, sxy = 0, syy = 0;
    for (auto [s, v] : pairs) {
        double dx = std::log(s) - mx, dy = std::log(v) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ArgumentError("slope fit needs distinct scales");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return fit;
}

PolarInterpolator::PolarInterpolator(std::vector<double> radii, int n_theta, std::vector<cplx> values)
    : radii_(std::move(radii)), n_(n_theta), values_(std::move(values)) {
    if (values_.size() != radii_.size() * static_cast<std::size_t>(n_)) throw ArgumentError("interpolator size mismatch");
}

cplx PolarInterpolator::operator()(double r, double theta) const {
    const int M = static_cast<int>(radii_.size());
    const int m = std::min(M, 4);
    int k = static_cast<int>(std::upper_bound(radii_.begin(), radii_.end(), r) - radii_.begin()) - 1;
    int s = std::clamp(k - 1, 0, M - m);

    double t = theta / (2.0 * pi) * n_;
    t -= std::floor(t / n_) * n_;
    int i0 = static_cast<int>(std::floor(t));
    double x = t - i0;
    double wa[4] = {-x * (x - 1) * (x - 2) / 6.0, (x + 1) * (x - 1) * (x - 2) / 2.0,
                    -(x + 1) * x * (x - 2) / 2.0, (x + 1) * x * (x - 1) / 6.0};
    cplx result = 0.0;
    for (int a = 0; a < m; ++a) {
        double wr = 1.0;
        for (int b = 0; b < m; ++b)
            if (b != a) wr *= (r - radii_[s + b]) / (radii_[s + a] - radii_[s + b]);
        const cplx* row = values_.data() + static_cast<std::size_t>(s + a) * n_;
        cplx ang = 0.0;
        for (int c = 0; c < 4; ++c) {
            int idx = ((i0 - 1 + c) % n_ + n_) % n_;
            ang += wa[c] * row[idx];
        }
        result += wr * ang;
    }
    return result;
}

}  // namespace teich
