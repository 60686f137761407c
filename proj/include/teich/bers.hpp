#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"
#include "teich/beltrami.hpp"
#include "teich/config.hpp"
#include "teich/grid.hpp"
#include "teich/mobius.hpp"

namespace teich {

class SolvedMap;

// Holomorphic quadratic form on the exterior disk. Samples live on the
// exterior circles (phi(z)) and on the far chart (phi~(w) = phi(1/w) w^-4,
// |w| <= 1/r_max), with the value at w = 0 kept separately. An optional
// far-chart evaluator gives exact off-grid values; otherwise samples are
// interpolated.
class QuadraticForm {
public:
    using Evaluator = std::function<cplx(cplx)>;  // w -> phi~(w), |w| < 1

    QuadraticForm() = default;
    QuadraticForm(ComplexGridFunction near, ComplexGridFunction far, cplx at_infinity, Evaluator eval = {});
    static QuadraticForm from_far_function(const GridSpec& spec, Evaluator phi_tilde);
    static QuadraticForm zero(const GridSpec& spec);

    const GridSpec& spec() const { return near_.spec(); }
    const ComplexGridFunction& near() const { return near_; }
    const ComplexGridFunction& far() const { return far_; }
    cplx at_infinity() const { return at_inf_; }
    bool has_evaluator() const { return static_cast<bool>(eval_); }

    // phi(z) for |z| > 1.
    cplx evaluate(cplx z) const;
    // phi~(w) for |w| < 1.
    cplx evaluate_far(cplx w) const;
    // rho^{-2} |phi| at z, i.e. (|z|^2 - 1)^2 |phi(z)| / 4.
    double weighted(cplx z) const;
    double weighted_far(cplx w) const;

    QuadraticForm operator-(const QuadraticForm& o) const;
    QuadraticForm operator+(const QuadraticForm& o) const;
    QuadraticForm scaled(cplx c) const;

private:
    ComplexGridFunction near_, far_;
    cplx at_inf_{0.0, 0.0};
    Evaluator eval_;
    PolarInterpolator near_interp_, far_interp_;
};

// Schwarzian of a map conformal on the exterior disk, given as a callable.
// center is a point outside the image of the exterior disk (used for the
// chart at infinity). Derivatives come from Cauchy integrals over small
// circles around each point.
QuadraticForm schwarzian_of(const GridSpec& spec, const std::function<cplx(cplx)>& f, cplx center);
QuadraticForm schwarzian(const SolvedMap& f);
QuadraticForm bers_projection(const BeltramiField& mu, const Config& cfg = default_config());

// S_f at one point, with derivatives from a Cauchy integral on a circle of
// the given radius around it.
cplx local_schwarzian(const std::function<cplx(cplx)>& f, cplx z, double radius, int points = 48);

struct BNorm {
    double value = 0.0;
    cplx argmax_w{0.0, 0.0};  // maximizer in the far chart coordinate w = 1/z
};
BNorm b_norm_detail(const QuadraticForm& phi);
double b_norm(const QuadraticForm& phi);

struct DecayBand {
    double offset;
    double value;
};
std::vector<DecayBand> b0_decay_profile(const QuadraticForm& phi);
NormResult b0_alpha_norm(const QuadraticForm& phi, double alpha, const Config& cfg = default_config());
NormResult a_p_norm(const QuadraticForm& phi, double p, const Config& cfg = default_config());

struct DecayFit {
    double alpha_hat = 0.0;
    double r_squared = 1.0;
    bool lower_bound_only = false;
    int bands_used = 0;
};
DecayFit decay_exponent(const QuadraticForm& phi, const Config& cfg = default_config());
DecayFit decay_exponent_from_profile(const std::vector<DecayBand>& profile, const Config& cfg = default_config());
// Evidence that the weighted profile tends to 0: below the noise floor, a
// drop by b0_drop, or a decreasing tail with exponent >= vanish_exponent.
bool profile_vanishes(const std::vector<DecayBand>& profile, const Config& cfg = default_config());

// (gamma^* phi)(z) = phi(gamma(z)) gamma'(z)^2 for a disk-preserving gamma.
QuadraticForm pullback(const QuadraticForm& phi, const MobiusMap& gamma);
double invariance_residual(const QuadraticForm& phi, const FuchsianSample& sample);

// Relative size of d phi / d zbar on the exterior grid.
double holomorphy_residual(const QuadraticForm& phi);

nlohmann::json form_report(const QuadraticForm& phi, const Config& cfg = default_config());

}  // namespace teich
