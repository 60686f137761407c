#include "teich/fixtures.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <sstream>

#include "teich/errors.hpp"

namespace teich::fixtures {

namespace {

struct Parsed {
    std::string family;
    std::vector<double> params;
};

Parsed parse(const std::string& name) {
    Parsed p;
    std::stringstream ss(name);
    std::string tok;
    std::getline(ss, p.family, ':');
    while (std::getline(ss, tok, ':')) {
        try {
            std::size_t used = 0;
            p.params.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ArgumentError("bad fixture parameter in '" + name + "'");
        }
    }
    return p;
}

double param(const Parsed& p, std::size_t k, double fallback, const std::string& name) {
    if (k < p.params.size()) return p.params[k];
    if (std::isnan(fallback)) throw ArgumentError("fixture '" + name + "' is missing a parameter");
    return fallback;
}

constexpr double required = NAN;

}  // namespace

BeltramiField field(const std::string& name, const GridSpec& spec) {
    Parsed p = parse(name);
    const std::string& f = p.family;
    if (f == "zero") return BeltramiField::zero(spec);
    if (f == "const") {
        double k = param(p, 0, required, name);
        return BeltramiField::from_function(spec, [k](cplx) { return cplx(k, 0.0); });
    }
    if (f == "stretch") {
        double K = param(p, 0, required, name);
        double k = (K - 1.0) / (K + 1.0);
        return BeltramiField::from_function(spec, [k](cplx z) {
            return std::abs(z) < 1e-300 ? cplx(0.0, 0.0) : k * z / std::conj(z);
        });
    }
    if (f == "vanish") {
        double k = param(p, 0, required, name);
        return BeltramiField::from_function(spec, [k](cplx z) { return cplx(k * (1.0 - std::norm(z)), 0.0); });
    }
    if (f == "holder") {
        double k = param(p, 0, required, name), a = param(p, 1, required, name);
        return BeltramiField::from_function(spec, [k, a](cplx z) {
            return cplx(k * std::pow(std::max(1.0 - std::norm(z), 0.0), a), 0.0);
        });
    }
    if (f == "linear") {
        double c = param(p, 0, required, name);
        return BeltramiField::from_function(spec, [c](cplx z) { return c * z; });
    }
    if (f == "quad") {
        double c = param(p, 0, required, name);
        return BeltramiField::from_function(spec, [c](cplx z) { return c * z * z; });
    }
    if (f == "poly") {
        double seed = param(p, 0, required, name), sup = param(p, 1, 0.3, name);
        return random_field(static_cast<std::uint64_t>(seed), sup, spec);
    }
    throw ArgumentError("unknown field fixture: " + name);
}

double cusp_mean(double s) { return gsl_sf_gamma(1.0 + s) / std::pow(gsl_sf_gamma(1.0 + 0.5 * s), 2); }

CircleMap circle(const std::string& name, int n) {
    Parsed p = parse(name);
    const std::string& f = p.family;
    if (f == "identity") return CircleMap::identity(n);
    if (f == "mobius") {
        cplx c(param(p, 0, required, name), param(p, 1, 0.0, name));
        return CircleMap::from_mobius(MobiusMap::translation(c), n);
    }
    if (f == "ellipse") {
        double k = param(p, 0, required, name);
        auto lift = [k](double t) { return t + std::arg(1.0 + k * std::polar(1.0, -2.0 * t)); };
        auto deriv = [k](double t) {
            cplx e = k * std::polar(1.0, -2.0 * t);
            return 1.0 + (cplx(0.0, -2.0) * e / (1.0 + e)).imag();
        };
        return CircleMap::from_functions(lift, deriv, n);
    }
    if (f == "cusp") {
        double c = param(p, 0, required, name);
        const double s = 0.5, m = cusp_mean(s);
        if (!(c * m < 1.0)) throw ArgumentError("cusp amplitude too large for monotonicity");
        auto density = [s](double t) { return std::pow(std::abs(2.0 * std::sin(0.5 * t)), s); };
        gsl_integration_workspace* ws = gsl_integration_workspace_alloc(200);
        auto integral = [&](double t) {
            if (t <= 0.0) return 0.0;
            gsl_function F;
            F.function = [](double x, void* d) { return (*static_cast<decltype(density)*>(d))(x); };
            F.params = &density;
            double r = 0.0, err = 0.0;
            gsl_integration_qags(&F, 0.0, t, 1e-14, 1e-12, 200, ws, &r, &err);
            return r;
        };
        auto lift = [&](double t) { return t + c * (integral(t) - m * t); };
        auto deriv = [&](double t) { return 1.0 + c * (density(t) - m); };
        CircleMap out = CircleMap::from_functions(lift, deriv, n);
        gsl_integration_workspace_free(ws);
        return out;
    }
    throw ArgumentError("unknown circle fixture: " + name);
}

Germ1D germ(const std::string& name, double delta) {
    Parsed p = parse(name);
    const std::string& f = p.family;
    const int samples = default_config().germ_samples;
    if (f == "linear") {
        double a = param(p, 0, required, name);
        return Germ1D::from_function([a](double x) { return a * x; }, [a](double) { return a; }, delta, 0.9, samples);
    }
    if (f == "quadratic") {
        double a = param(p, 0, required, name), c = param(p, 1, required, name);
        return Germ1D::from_function([a, c](double x) { return a * x + c * x * x; },
                                     [a, c](double x) { return a + 2.0 * c * x; }, delta, 0.9, samples);
    }
    if (f == "holder") {
        double a = param(p, 0, required, name), c = param(p, 1, required, name), al = param(p, 2, required, name);
        return Germ1D::from_function([a, c, al](double x) { return a * x + c * x * std::pow(std::abs(x), al); },
                                     [a, c, al](double x) { return a + c * (1.0 + al) * std::pow(std::abs(x), al); },
                                     delta, al, samples);
    }
    throw ArgumentError("unknown germ fixture: " + name);
}

QuadraticForm form(const std::string& name, const GridSpec& spec) {
    Parsed p = parse(name);
    const std::string& f = p.family;
    if (f == "zero") return QuadraticForm::zero(spec);
    if (f == "constant") {
        // Schwarzian of the constant-k solution in the far chart.
        double k = param(p, 0, required, name);
        return QuadraticForm::from_far_function(spec, [k](cplx w) {
            cplx d = 1.0 - k * w * w;
            return -6.0 * k / (d * d);
        });
    }
    if (f == "monomial") {
        double c = param(p, 0, required, name);
        int n = static_cast<int>(param(p, 1, 4.0, name));
        if (n < 4) throw ArgumentError("monomial forms need n >= 4");
        return QuadraticForm::from_far_function(spec, [c, n](cplx w) { return c * std::pow(w, n - 4); });
    }
    if (f == "random") {
        double seed = param(p, 0, required, name), target = param(p, 1, 0.3, name);
        return random_form(static_cast<std::uint64_t>(seed), target, spec);
    }
    throw ArgumentError("unknown form fixture: " + name);
}

MobiusMap mobius(const std::string& name) {
    Parsed p = parse(name);
    const std::string& f = p.family;
    if (f == "identity") return MobiusMap::identity();
    if (f == "translation") return MobiusMap::translation(cplx(param(p, 0, required, name), param(p, 1, 0.0, name)));
    if (f == "rotation") return MobiusMap::rotation(param(p, 0, required, name));
    if (f == "hyperbolic") return MobiusMap::translation(cplx(param(p, 0, required, name), 0.0));
    if (f == "random") {
        std::mt19937_64 rng(static_cast<std::uint64_t>(param(p, 0, required, name)));
        return random_mobius(rng, param(p, 1, 0.5, name));
    }
    throw ArgumentError("unknown Möbius fixture: " + name);
}

std::vector<std::string> field_names() {
    return {"zero", "const:0.1", "stretch:1.5", "vanish:0.2", "holder:0.1:0.5", "linear:0.2", "quad:0.2", "poly:1"};
}
std::vector<std::string> circle_names() { return {"identity", "mobius:0.3:-0.2", "ellipse:0.1", "cusp:0.5"}; }
std::vector<std::string> germ_names() { return {"linear:0.5", "quadratic:0.5:0.1", "holder:0.5:0.05:0.5"}; }
std::vector<std::string> form_names() { return {"zero", "constant:0.1", "monomial:0.1:4", "random:1:0.3"}; }

BeltramiField random_field(std::uint64_t seed, double sup, const GridSpec& spec) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    struct Term {
        int m, n;
        cplx a;
    };
    std::vector<Term> terms;
    double total = 0.0;
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; m + n <= 3; ++n) {
            cplx a(u(rng), u(rng));
            a /= (1.0 + m + n);
            terms.push_back({m, n, a});
            total += std::abs(a);
        }
    double scale = sup / total;
    for (auto& t : terms) t.a *= scale;
    return BeltramiField::from_function(spec, [terms](cplx z) {
        cplx s = 0.0, zb = std::conj(z);
        for (const auto& t : terms) s += t.a * std::pow(z, t.m) * std::pow(zb, t.n);
        return s;
    });
}

MobiusMap random_mobius(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = radius * std::sqrt(u(rng));
    double t = 2.0 * pi * u(rng);
    double rot = 2.0 * pi * u(rng);
    return MobiusMap::translation(std::polar(r, t)) * MobiusMap::rotation(rot);
}

QuadraticForm random_form(std::uint64_t seed, double target_b_norm, const GridSpec& spec) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> b(5);
    for (std::size_t n = 0; n < b.size(); ++n) b[n] = cplx(u(rng), u(rng)) / (1.0 + n);
    auto make = [&](const std::vector<cplx>& c) {
        return QuadraticForm::from_far_function(spec, [c](cplx w) {
            cplx s = 0.0;
            for (std::size_t n = c.size(); n-- > 0;) s = s * w + c[n];
            return s;
        });
    };
    double norm = b_norm(make(b));
    for (auto& c : b) c *= target_b_norm / norm;
    return make(b);
}

}  // namespace teich::fixtures
