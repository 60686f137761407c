#include "teich/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "teich/errors.hpp"
#include "teich/mobius.hpp"

namespace teich {

BaryPoint barycentric_point(const CircleMap& g, cplx z, std::optional<cplx> seed, int quadrature, double tol) {
    if (!(std::abs(z) < 1.0)) throw DomainError("barycentric extension needs |z| < 1");
    const int K = quadrature;
    const MobiusMap Mz = MobiusMap::translation(z);
    std::vector<cplx> eta(K), u(K);
    for (int k = 0; k < K; ++k) {
        eta[k] = std::polar(1.0, 2.0 * pi * (k + 0.5) / K);
        u[k] = g.apply(Mz(eta[k]));
    }
    cplx w = seed ? *seed : 0.0;
    if (!(std::abs(w) < 1.0)) w = 0.0;

    BaryPoint out;
    std::vector<cplx> v(K);
    double prev = INFINITY;
    for (int step = 0; step <= 100; ++step) {
        cplx F = 0.0, C = 0.0;
        for (int k = 0; k < K; ++k) {
            v[k] = (u[k] - w) / (1.0 - std::conj(w) * u[k]);
            F += v[k];
            C += v[k] * v[k];
        }
        F /= K;
        C /= K;
        out.residual = std::abs(F);
        out.steps = step;
        if (out.residual <= tol) break;
        // roundoff floor near the boundary
        if (out.residual < 1e-10 && out.residual > 0.5 * prev) break;
        prev = out.residual;
        if (step == 100) {
            std::ostringstream msg;
            msg << "barycenter Newton failed at z = (" << z.real() << ", " << z.imag() << "), residual "
                << out.residual;
            throw ExtensionError(msg.str());
        }
        double den = 1.0 - std::norm(C);
        if (!(den > 1e-14)) throw ExtensionError("degenerate barycenter Jacobian");
        cplx xi = (F + C * std::conj(F)) / den;
        if (std::abs(xi) > 0.5) xi *= 0.5 / std::abs(xi);
        w = (xi + w) / (1.0 + std::conj(w) * xi);
    }
    cplx A = 0.0, B = 0.0, C = 0.0;
    for (int k = 0; k < K; ++k) {
        A += v[k] * std::conj(eta[k]);
        B += v[k] * eta[k];
        C += v[k] * v[k];
    }
    A /= K;
    B /= K;
    C /= K;
    double den = 1.0 - std::norm(C);
    cplx p = (A + C * std::conj(B)) / den, q = (B + C * std::conj(A)) / den;
    double scale = (1.0 - std::norm(w)) / (1.0 - std::norm(z));
    out.w = w;
    out.dz = scale * p;
    out.dzbar = scale * q;
    return out;
}

BarycentricExtension barycentric_extension(const CircleMap& g, const GridSpec& spec, int quadrature) {
    ComplexGridFunction vals(spec, Chart::disk), dz(spec, Chart::disk), dzbar(spec, Chart::disk);
    ComplexGridFunction mu(spec, Chart::disk);
    const int M = vals.circles(), N = vals.n();
    std::vector<int> steps(M, 0);
    std::vector<double> resid(M, 0.0);
    parallel_for(M, [&](int j) {
        double r = vals.radii()[j];
        std::optional<cplx> seed = r * g.apply(1.0);
        for (int i = 0; i < N; ++i) {
            BaryPoint b = barycentric_point(g, vals.point(j, i), seed, quadrature);
            seed = b.w;
            vals.at(j, i) = b.w;
            dz.at(j, i) = b.dz;
            dzbar.at(j, i) = b.dzbar;
            mu.at(j, i) = b.dzbar / b.dz;
            steps[j] = std::max(steps[j], b.steps);
            resid[j] = std::max(resid[j], b.residual);
        }
    });
    BarycentricExtension e{std::move(vals), std::move(dz), std::move(dzbar), BeltramiField(std::move(mu)), 0, 0.0};
    e.max_steps = *std::max_element(steps.begin(), steps.end());
    e.max_residual = *std::max_element(resid.begin(), resid.end());
    return e;
}

double jacobian_constant(const BarycentricExtension& e) {
    double c = 0.0;
    for (int j = 0; j < e.values.circles(); ++j)
        for (int i = 0; i < e.values.n(); ++i) {
            double rz = 1.0 - std::norm(e.values.point(j, i));
            double rw = 1.0 - std::norm(e.values.at(j, i));
            double J = std::norm(e.dz.at(j, i)) - std::norm(e.dzbar.at(j, i));
            c = std::max(c, rz * rz * J / (rw * rw));
        }
    return c;
}

BeltramiField ahlfors_weill(const QuadraticForm& phi) {
    if (!(b_norm(phi) < 0.5)) throw RangeError("Ahlfors-Weill section needs b_norm < 1/2");
    auto formula = [phi](cplx z) {
        double t = 1.0 - std::norm(z);
        if (!(t > 0.0)) return cplx(0.0, 0.0);
        return -0.5 * t * t * phi.evaluate_far(std::conj(z));
    };
    return BeltramiField::from_function(phi.spec(), formula);
}

double aw_pointwise_ratio(const QuadraticForm& phi, const BeltramiField& mu) {
    double worst = 0.0;
    const auto& s = mu.samples();
    for (int j = 0; j < s.circles(); ++j)
        for (int i = 0; i < s.n(); ++i) {
            cplx z = s.point(j, i);
            if (std::abs(z) == 0.0) continue;
            cplx zs = 1.0 / std::conj(z);
            double v = phi.weighted(zs);
            if (v <= 1e-300) continue;
            worst = std::max(worst, std::abs(s.at(j, i)) / v);
        }
    return worst;
}

nlohmann::json RegularityReport::to_json() const {
    nlohmann::json prof = nlohmann::json::array();
    for (const auto& b : form_profile) prof.push_back({b.offset, b.value});
    nlohmann::json ladder = nlohmann::json::object();
    for (const auto& h : holder) {
        char key[16];
        std::snprintf(key, sizeof key, "%.1f", h.alpha);
        ladder[key] = {{"constant", h.constant}, {"slope", h.slope}, {"finite", h.finite}};
    }
    nlohmann::json j{{"vanishing_profile", field_profile.band_maxima},
                     {"form_profile", prof},
                     {"holder_ladder", ladder},
                     {"field_vanishes", field_vanishes},
                     {"form_vanishes", form_vanishes},
                     {"coherent", coherent},
                     {"jacobian_constant", jacobian_constant},
                     {"alpha_lower_bound_only", form_decay.lower_bound_only}};
    if (std::isfinite(form_decay.alpha_hat))
        j["alpha_hat"] = form_decay.alpha_hat;
    else
        j["alpha_hat"] = "inf";
    return j;
}

RegularityReport classify_regularity(const CircleMap& g, const GridSpec& spec, const Config& cfg) {
    RegularityReport rep;
    BarycentricExtension e = barycentric_extension(g, spec);
    rep.jacobian_constant = jacobian_constant(e);
    rep.field_profile = vanishing_profile(e.mu, cfg);
    rep.field_vanishes = rep.field_profile.vanishes;

    QuadraticForm phi = bers_projection(e.mu, cfg);
    rep.form_profile = b0_decay_profile(phi);
    rep.form_decay = decay_exponent_from_profile(rep.form_profile, cfg);
    rep.form_vanishes = profile_vanishes(rep.form_profile, cfg);
    rep.coherent = rep.field_vanishes == rep.form_vanishes;

    std::vector<double> alphas;
    for (int k = 1; k <= 9; ++k) alphas.push_back(0.1 * k);
    rep.holder = holder_ladder(g.derivative_samples(), g.spacing(), alphas, true, cfg.holder_growth_tol);
    return rep;
}

}  // namespace teich
