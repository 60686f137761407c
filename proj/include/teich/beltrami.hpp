#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "teich/config.hpp"
#include "teich/grid.hpp"

namespace teich {

class SolvedMap;

// Grid-sampled complex dilatation on the unit disk with sup < 1. Fields
// built from a formula keep it for exact off-grid evaluation; others are
// interpolated.
class BeltramiField {
public:
    using Formula = std::function<cplx(cplx)>;

    explicit BeltramiField(ComplexGridFunction samples, Formula formula = {});
    static BeltramiField from_function(const GridSpec& spec, Formula f);
    static BeltramiField zero(const GridSpec& spec);

    const ComplexGridFunction& samples() const { return samples_; }
    const GridSpec& spec() const { return samples_.spec(); }
    double sup_bound() const { return sup_; }
    cplx at(int j, int i) const { return samples_.at(j, i); }
    cplx evaluate(cplx z) const;
    bool has_formula() const { return static_cast<bool>(formula_); }
    // Identifies the sample content; used for solver consistency checks.
    const std::string& content_hash() const { return hash_; }

    std::string sidecar_json() const;

private:
    ComplexGridFunction samples_;
    Formula formula_;
    double sup_ = 0.0;
    std::string hash_;
    PolarInterpolator interp_;
};

struct NormResult {
    double value = 0.0;
    bool infinite = false;
    std::vector<double> bands;  // per-band partial sums or maxima
    nlohmann::json to_json() const;
};

double sup_norm(const BeltramiField& mu);
// Returns the p-th power: int |mu|^p rho^2 dA.
NormResult p_norm(const BeltramiField& mu, double p, const Config& cfg = default_config());
// Same integral for arbitrary disk samples (differences of coefficients).
NormResult p_norm_samples(const ComplexGridFunction& g, double p, const Config& cfg = default_config());
NormResult holder_weighted_norm(const BeltramiField& mu, double alpha, const Config& cfg = default_config());

struct VanishingResult {
    bool vanishes = false;
    std::vector<double> band_maxima;
};
// Bel_0 proxy: outermost band max below vanish_eps0 and decreasing across the
// last three bands.
VanishingResult vanishing_profile(const BeltramiField& mu, const Config& cfg = default_config());

// Per-band maxima of weight(|z|) * |mu| over disk circles.
std::vector<double> disk_band_maxima(const ComplexGridFunction& f, const std::function<double(double)>& weight);

// nu1 * nu2^{-1}: dilatation of f^{nu1} o (f^{nu2})^{-1}, sampled on the grid.
BeltramiField compose(const BeltramiField& nu1, const BeltramiField& nu2, const SolvedMap& f_nu2,
                      const Config& cfg = default_config());
BeltramiField right_translate(const BeltramiField& mu, const BeltramiField& nu, const SolvedMap& f_nu,
                              const Config& cfg = default_config());
// mu * nu: dilatation of f^mu o f^nu, forward evaluation only.
BeltramiField product(const BeltramiField& mu, const BeltramiField& nu, const SolvedMap& f_nu);

BeltramiField tail_part(const BeltramiField& mu, double r0);
struct TailSplit {
    BeltramiField tail;
    BeltramiField core;
};
TailSplit split_tail(const BeltramiField& mu, double r0, const SolvedMap& f_tail, const Config& cfg = default_config());

// Boundary-adapted integral over a sequence of circles approaching a
// boundary. offsets: distances to the boundary, decreasing; integrand: the
// integrand with respect to t = -log(offset) at those nodes; start: the
// integral accumulated before the first node. Divergence is decided by the
// Cauchy criterion on the ladder increments.
NormResult ladder_integral(const std::vector<double>& offsets, const std::vector<double>& integrand, double start,
                           const std::vector<double>& ladder, const Config& cfg);

}  // namespace teich
