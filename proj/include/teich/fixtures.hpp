#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "teich/beltrami.hpp"
#include "teich/bers.hpp"
#include "teich/circle_map.hpp"
#include "teich/dynamics.hpp"
#include "teich/mobius.hpp"

// Named constructors for every example input. Names are colon-separated:
// a family followed by its numeric parameters.
namespace teich::fixtures {

// zero, const:k, stretch:K, vanish:k, holder:k:alpha, linear:c, quad:c,
// poly:seed[:sup]
BeltramiField field(const std::string& name, const GridSpec& spec);
// identity, mobius:re:im, ellipse:k, cusp:c
CircleMap circle(const std::string& name, int n = 2048);
// linear:a, quadratic:a:c, holder:a:c:alpha
Germ1D germ(const std::string& name, double delta = 0.5);
// zero, constant:k, monomial:c:n, random:seed[:b_norm]
QuadraticForm form(const std::string& name, const GridSpec& spec);
// identity, translation:re:im, rotation:angle, hyperbolic:c, random:seed[:radius]
MobiusMap mobius(const std::string& name);

std::vector<std::string> field_names();
std::vector<std::string> circle_names();
std::vector<std::string> germ_names();
std::vector<std::string> form_names();

// Smooth random coefficient sum a_mn z^m conj(z)^n with sup bounded by `sup`.
BeltramiField random_field(std::uint64_t seed, double sup, const GridSpec& spec);
MobiusMap random_mobius(std::mt19937_64& rng, double radius = 0.5);
// Polynomial form in the far chart rescaled to the requested B-norm.
QuadraticForm random_form(std::uint64_t seed, double target_b_norm, const GridSpec& spec);

// Mean of |2 sin(t/2)|^s over the circle.
double cusp_mean(double s);

}  // namespace teich::fixtures
