#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "teich/beltrami.hpp"
#include "teich/bers.hpp"
#include "teich/config.hpp"
#include "teich/solver.hpp"

namespace teich {

enum class SpaceKind { B0, Ap, B0alpha, B0posAlpha };

struct Space {
    SpaceKind kind = SpaceKind::B0;
    double param = 0.0;  // p for Ap, alpha for the Hölder spaces
    // "B0", "Ap:2", "B0alpha:0.5", "B0posAlpha:0.3"
    static Space parse(const std::string& s);
    std::string to_string() const;
};

struct CosetReport {
    Space space;
    double input_norm = 0.0;
    bool input_in_space = false;
    double dilatation_K = 1.0;
    double delta_b_norm = 0.0;
    // Max displacement of 1, i, -1 under the boundary map of f^mu o f^nu:
    // the Möbius correction needed to renormalize the composition.
    double composition_correction = 0.0;
    std::vector<DecayBand> delta_profile;
    DecayFit delta_decay;
    NormResult delta_ap;
    double threshold = 0.0;
    bool pass = false;
    nlohmann::json to_json() const;
};

// Delta = Phi(mu * nu) - Phi(nu) and the space's membership diagnostic on
// it. Throws ArgumentError when mu fails the space's own diagnostic.
CosetReport coset_residual(const BeltramiField& mu, const BeltramiField& nu, const Space& space,
                           const Config& cfg = default_config());
// Membership of mu itself; value is the norm that decides it.
std::pair<bool, double> field_in_space(const BeltramiField& mu, const Space& space, const Config& cfg = default_config());

struct Base2Report {
    double max_violation = 0.0;   // max of lhs - rhs
    double identity_residual = 0.0;
    int points = 0;
    nlohmann::json to_json() const;
};
Base2Report check_base2(const BeltramiField& mu1, const BeltramiField& mu2, const BeltramiField& nu,
                        const SolvedMap& f_nu, const Config& cfg = default_config());

struct Base1Report {
    double max_ratio = 0.0;
    int samples = 0;
    int dropped = 0;
    std::vector<double> lhs, rhs;
    nlohmann::json to_json() const;
};
Base1Report check_base1(const BeltramiField& mu, const BeltramiField& nu, const Config& cfg = default_config());

struct ClaimsReport {
    double p = 2.0;
    double claim1_lhs = 0.0, claim1_rhs = 0.0;
    double claim2_lhs = 0.0, claim2_rhs = 0.0;
    bool claim1_finite = true, claim2_finite = true;
    double claim1_constant() const;
    double claim2_constant() const;
    nlohmann::json to_json() const;
};
ClaimsReport check_claims_p(const BeltramiField& mu1, const BeltramiField& mu2, const BeltramiField& nu, double p,
                            const Config& cfg = default_config());

struct MoriReport {
    std::string status;  // ok | indeterminate
    double lower = 0.0;
    double upper = 0.0;
    double K = 1.0;
    bool within_mori = false;
    int rays = 0;
    nlohmann::json to_json() const;
};
// Exponents a in 1 - |f(z)| ~ (1 - |z|)^a along radial rays, fitted on the
// finest `bands` annuli of the boundary ladder.
MoriReport mori_profile(const SolvedMap& f, int bands = 3, const Config& cfg = default_config());

}  // namespace teich
