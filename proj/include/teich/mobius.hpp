#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "teich/grid.hpp"

namespace teich {

class CircleMap;

// z -> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
struct MobiusMap {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};

    static MobiusMap identity() { return {}; }
    static MobiusMap rotation(double angle);
    // z -> (z + c) / (1 + conj(c) z)
    static MobiusMap translation(cplx c);
    // Renormalizes arbitrary (a, b) with |a| > |b|.
    static MobiusMap from_coefficients(cplx a, cplx b);

    cplx operator()(cplx z) const;
    // Image of 1/w, written in w to stay finite near infinity.
    cplx apply_at_inverse(cplx w) const;
    cplx derivative(cplx z) const;
    MobiusMap inverse() const;
    double trace() const { return 2.0 * a.real(); }
    double det() const { return std::norm(a) - std::norm(b); }

    nlohmann::json to_json() const;
    static MobiusMap from_json(const nlohmann::json& j);
};

// Composition (f * g)(z) = f(g(z)).
MobiusMap operator*(const MobiusMap& f, const MobiusMap& g);
double distance(const MobiusMap& f, const MobiusMap& g);

enum class MobiusClass { identity, elliptic, parabolic, hyperbolic };
std::string to_string(MobiusClass c);

MobiusClass classify(const MobiusMap& m, double tol = 1e-10);
double translation_length(const MobiusMap& m);

struct FuchsianSample {
    std::vector<MobiusMap> generators;
    int word_length_cap = 6;
};

struct LehnerResult {
    std::string status;  // satisfied | violated | indeterminate
    std::optional<double> min_length;
    double threshold = 0.0;
    int elements_checked = 0;
    int hyperbolic_count = 0;
};

// Finite-enumeration evidence only: minimum translation length over reduced
// words of length <= word_length_cap.
LehnerResult lehner_check(const FuchsianSample& sample, double threshold = 0.1);

// Unique disk Möbius map sending p1, p2, p3 on the circle to q1, q2, q3.
MobiusMap mobius_from_triples(cplx p1, cplx p2, cplx p3, cplx q1, cplx q2, cplx q3);

struct Normalization;
Normalization normalize_fixing_1_i_minus1(const CircleMap& f);

}  // namespace teich
