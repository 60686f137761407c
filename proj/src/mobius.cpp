#include "teich/mobius.hpp"

#include <algorithm>
#include <cmath>

#include "teich/circle_map.hpp"
#include "teich/errors.hpp"

namespace teich {

MobiusMap MobiusMap::rotation(double angle) { return {std::polar(1.0, 0.5 * angle), 0.0}; }

MobiusMap MobiusMap::translation(cplx c) {
    double s = 1.0 - std::norm(c);
    if (!(s > 0.0)) throw DomainError("translation parameter must lie in the disk");
    double k = 1.0 / std::sqrt(s);
    return {k, c * k};
}

MobiusMap MobiusMap::from_coefficients(cplx a, cplx b) {
    double d = std::norm(a) - std::norm(b);
    if (!(d > 0.0)) throw DomainError("coefficients do not preserve the disk");
    double k = 1.0 / std::sqrt(d);
    return {a * k, b * k};
}

cplx MobiusMap::operator()(cplx z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }

cplx MobiusMap::apply_at_inverse(cplx w) const { return (a + b * w) / (std::conj(b) + std::conj(a) * w); }

cplx MobiusMap::derivative(cplx z) const {
    cplx d = std::conj(b) * z + std::conj(a);
    return det() / (d * d);
}

MobiusMap MobiusMap::inverse() const { return {std::conj(a), -b}; }

nlohmann::json MobiusMap::to_json() const {
    return {{"a_re", a.real()}, {"a_im", a.imag()}, {"b_re", b.real()}, {"b_im", b.imag()}};
}

MobiusMap MobiusMap::from_json(const nlohmann::json& j) {
    try {
        return from_coefficients({j.at("a_re").get<double>(), j.at("a_im").get<double>()},
                                 {j.at("b_re").get<double>(), j.at("b_im").get<double>()});
    } catch (const nlohmann::json::exception& ex) {
        throw ArgumentError(std::string("malformed mobius json: ") + ex.what());
    }
}

MobiusMap operator*(const MobiusMap& f, const MobiusMap& g) {
    return {f.a * g.a + f.b * std::conj(g.b), f.a * g.b + f.b * std::conj(g.a)};
}

double distance(const MobiusMap& f, const MobiusMap& g) {
    // Matrices are defined up to sign.
    double plus = std::abs(f.a - g.a) + std::abs(f.b - g.b);
    double minus = std::abs(f.a + g.a) + std::abs(f.b + g.b);
    return std::min(plus, minus);
}

std::string to_string(MobiusClass c) {
    switch (c) {
        case MobiusClass::identity: return "identity";
        case MobiusClass::elliptic: return "elliptic";
        case MobiusClass::parabolic: return "parabolic";
        case MobiusClass::hyperbolic: return "hyperbolic";
    }
    return "identity";
}

MobiusClass classify(const MobiusMap& m, double tol) {
    if (std::abs(m.b) <= 1e-12 && std::abs(m.a.imag()) <= 1e-12) return MobiusClass::identity;
    double t = std::abs(m.trace());
    if (std::abs(t - 2.0) <= tol) return MobiusClass::parabolic;
    return t < 2.0 ? MobiusClass::elliptic : MobiusClass::hyperbolic;
}

double translation_length(const MobiusMap& m) {
    if (classify(m) != MobiusClass::hyperbolic) throw ClassificationError("translation length needs a hyperbolic element");
    return 2.0 * std::acosh(std::abs(m.trace()) / 2.0);
}

LehnerResult lehner_check(const FuchsianSample& sample, double threshold) {
    LehnerResult res;
    res.threshold = threshold;
    res.status = "indeterminate";
    if (sample.generators.empty()) return res;

    std::vector<MobiusMap> letters;
    for (const auto& g : sample.generators) {
        letters.push_back(g);
        letters.push_back(g.inverse());
    }
    struct Word {
        MobiusMap m;
        int last;
    };
    std::vector<Word> frontier;
    for (int l = 0; l < static_cast<int>(letters.size()); ++l) frontier.push_back({letters[l], l});
    auto visit = [&](const MobiusMap& m) {
        ++res.elements_checked;
        if (classify(m) != MobiusClass::hyperbolic) return;
        ++res.hyperbolic_count;
        double len = translation_length(m);
        if (!res.min_length || len < *res.min_length) res.min_length = len;
    };
    for (int depth = 1; depth <= sample.word_length_cap; ++depth) {
        for (const auto& w : frontier) visit(w.m);
        if (depth == sample.word_length_cap) break;
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (int l = 0; l < static_cast<int>(letters.size()); ++l) {
                if ((l ^ 1) == w.last) continue;
                next.push_back({w.m * letters[l], l});
            }
        frontier = std::move(next);
    }
    if (res.min_length) res.status = *res.min_length > threshold ? "satisfied" : "violated";
    return res;
}

MobiusMap mobius_from_triples(cplx p1, cplx p2, cplx p3, cplx q1, cplx q2, cplx q3) {
    auto min_gap = [](cplx x, cplx y, cplx z) {
        return std::min({std::abs(x - y), std::abs(y - z), std::abs(x - z)});
    };
    if (min_gap(p1, p2, p3) < 1e-8 || min_gap(q1, q2, q3) < 1e-8)
        throw ConditioningError("degenerate boundary triple");
    struct M2 {
        cplx A, B, C, D;
    };
    // Sends x1 -> 0, x2 -> 1, x3 -> infinity.
    auto cross = [](cplx x1, cplx x2, cplx x3) {
        return M2{x2 - x3, -x1 * (x2 - x3), x2 - x1, -x3 * (x2 - x1)};
    };
    auto mul = [](const M2& f, const M2& g) {
        return M2{f.A * g.A + f.B * g.C, f.A * g.B + f.B * g.D, f.C * g.A + f.D * g.C, f.C * g.B + f.D * g.D};
    };
    M2 sp = cross(p1, p2, p3), sq = cross(q1, q2, q3);
    M2 sq_inv{sq.D, -sq.B, -sq.C, sq.A};
    M2 m = mul(sq_inv, sp);
    cplx det = m.A * m.D - m.B * m.C;
    if (std::abs(det) < 1e-14) throw ConditioningError("singular normalization matrix");
    cplx k = 1.0 / std::sqrt(det);
    m = {m.A * k, m.B * k, m.C * k, m.D * k};
    cplx a = 0.5 * (m.A + std::conj(m.D)), b = 0.5 * (m.B + std::conj(m.C));
    double mismatch = std::abs(m.A - std::conj(m.D)) + std::abs(m.B - std::conj(m.C));
    if (mismatch > 1e-6 * (std::abs(a) + std::abs(b)))
        throw ConditioningError("boundary triple does not determine a disk automorphism");
    return MobiusMap::from_coefficients(a, b);
}

Normalization normalize_fixing_1_i_minus1(const CircleMap& f) {
    MobiusMap m = mobius_from_triples(f.apply(1.0), f.apply(I), f.apply(-1.0), 1.0, I, -1.0);
    return {m, f.post_mobius(m)};
}

}  // namespace teich
