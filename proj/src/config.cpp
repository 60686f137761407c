#include "teich/config.hpp"

#include "teich/errors.hpp"

namespace teich {

#define TEICH_CONFIG_FIELDS(X)                                                                      \
    X(solver_tol) X(max_iterations) X(budget) X(inversion_tol) X(inversion_max_steps) X(vanish_eps0) \
    X(monotone_ratio) X(cauchy_ratio) X(growth_ratio) X(b0_drop) X(exponent_margin) X(holder_margin) \
    X(holder_growth_tol) X(fit_bands) X(profile_floor) X(vanish_exponent) X(base1_min_radius) X(lehner_threshold) X(round_trip_tol)       \
    X(contraction_target) X(germ_samples)

nlohmann::json Config::to_json() const {
    nlohmann::json j;
#define X(name) j[#name] = name;
    TEICH_CONFIG_FIELDS(X)
#undef X
    return j;
}

Config Config::from_json(const nlohmann::json& j) {
    Config c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
#define X(name)                                                     \
    if (it.key() == #name) {                                        \
        known = true;                                               \
        try {                                                       \
            c.name = it.value().get<decltype(c.name)>();            \
        } catch (const nlohmann::json::exception&) {                \
            throw ArgumentError("bad config value for " #name);    \
        }                                                           \
    }
        TEICH_CONFIG_FIELDS(X)
#undef X
        if (!known) throw ArgumentError("unknown config key: " + it.key());
    }
    return c;
}

const Config& default_config() {
    static const Config c;
    return c;
}

}  // namespace teich
