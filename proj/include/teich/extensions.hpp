#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "teich/beltrami.hpp"
#include "teich/bers.hpp"
#include "teich/circle_map.hpp"
#include "teich/config.hpp"
#include "teich/grid.hpp"
#include "teich/numerics.hpp"

namespace teich {

struct BaryPoint {
    cplx w{0.0, 0.0};
    cplx dz{1.0, 0.0};
    cplx dzbar{0.0, 0.0};
    int steps = 0;
    double residual = 0.0;
};

// Douady-Earle extension at one point: the zero w of the conformal
// barycenter of g pushed forward from harmonic measure at z. Harmonic
// measure is sampled as the image of uniform points under z's disk
// translation; derivatives follow from the implicit function theorem.
BaryPoint barycentric_point(const CircleMap& g, cplx z, std::optional<cplx> seed = std::nullopt,
                            int quadrature = 256, double tol = 1e-14);

struct BarycentricExtension {
    ComplexGridFunction values, dz, dzbar;  // on the disk circles
    BeltramiField mu;
    int max_steps = 0;
    double max_residual = 0.0;
};
BarycentricExtension barycentric_extension(const CircleMap& g, const GridSpec& spec, int quadrature = 256);

// Empirical C in rho^2(e(z)) J(z) <= C rho^2(z) over the grid.
double jacobian_constant(const BarycentricExtension& e);

// Classical section at the origin: mu(z) = -(1/2)(1-|z|^2)^2 phi~(conj z),
// phi~ the form in the chart w = 1/z. Requires b_norm(phi) < 1/2.
BeltramiField ahlfors_weill(const QuadraticForm& phi);
// max |mu(z)| rho^2(z*) / |phi(z*)| over grid points with phi(z*) != 0.
double aw_pointwise_ratio(const QuadraticForm& phi, const BeltramiField& mu);

struct RegularityReport {
    VanishingResult field_profile;
    std::vector<DecayBand> form_profile;
    DecayFit form_decay;
    std::vector<HolderEntry> holder;
    bool field_vanishes = false;
    bool form_vanishes = false;
    bool coherent = false;
    double jacobian_constant = 0.0;
    nlohmann::json to_json() const;
};
RegularityReport classify_regularity(const CircleMap& g, const GridSpec& spec, const Config& cfg = default_config());

}  // namespace teich
