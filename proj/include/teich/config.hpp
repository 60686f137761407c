#pragma once

#include <string>

#include "json.hpp"

namespace teich {

// Every tolerance and verdict threshold in one place. The CLI loads
// overrides from a JSON file; library calls default to default_config().
struct Config {
    // solver
    double solver_tol = 1e-12;
    int max_iterations = 600;
    double budget = 0.95;
    double inversion_tol = 1e-12;
    int inversion_max_steps = 60;

    // membership diagnostics
    double vanish_eps0 = 0.1;        // outermost-band max of |mu| for Bel_0
    double monotone_ratio = 0.98;    // band-to-band ratio counted as decreasing
    double cauchy_ratio = 0.98;      // p-norm increments ratio counted as converging
    double growth_ratio = 1.01;      // band maxima ratio counted as growing
    double b0_drop = 10.0;           // last band below first band / b0_drop
    double exponent_margin = 0.05;   // strict-exceedance margin for B_0^{>alpha}
    double holder_margin = 0.1;      // tolerance on alpha / K^2 exponents
    double holder_growth_tol = 0.05; // dyadic Hölder ladder blow-up slope
    int fit_bands = 4;               // finest bands used by exponent fits
    double profile_floor = 1e-10;    // absolute noise floor for profiles
    double vanish_exponent = 0.1;    // fitted decay exponent counted as vanishing

    // quantitative checks
    double base1_min_radius = 1.15;
    double lehner_threshold = 0.1;
    double round_trip_tol = 5e-3;    // section round trip in the B-norm

    // dynamics
    double contraction_target = 0.9;
    int germ_samples = 4001;

    nlohmann::json to_json() const;
    static Config from_json(const nlohmann::json& j);
};

const Config& default_config();

}  // namespace teich
