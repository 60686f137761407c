#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "teich/beltrami.hpp"
#include "teich/circle_map.hpp"
#include "teich/config.hpp"
#include "teich/grid.hpp"
#include "teich/kernels.hpp"
#include "teich/mobius.hpp"

namespace teich {

enum class MapKind { bers, disk_self_map };
std::string to_string(MapKind k);

// Numerical quasiconformal map with samples of f, df/dz and df/dzbar on
// the disk circles, f on the unit circle and on the exterior circles.
//
// bers: f = z + C[h] on the disk, f = z + sum a_n z^{-n} outside.
// disk_self_map: f = m(z e^{s}) on the disk with Re s = 0 on the circle
// and m the Möbius map fixing 1, i, -1; the exterior samples are the
// reflected map 1/conj(f(1/conj z)).
class SolvedMap {
public:
    MapKind kind() const { return kind_; }
    const BeltramiField& source() const { return source_; }
    const GridSpec& spec() const { return source_.spec(); }
    const ComplexGridFunction& forward_inner() const { return f_inner_; }
    const ComplexGridFunction& forward_outer() const { return f_outer_; }
    const ComplexGridFunction& dz_inner() const { return dz_; }
    const ComplexGridFunction& dzbar_inner() const { return dzbar_; }
    const std::vector<cplx>& boundary() const { return boundary_; }
    double dbar_residual() const { return dbar_residual_; }
    int neumann_terms() const { return neumann_terms_; }
    const std::vector<double>& increments() const { return increments_; }
    // bers only: f(z) = z + sum_{n>=1} a_n z^{-n} outside the disk, a_n at index n-1.
    const std::vector<cplx>& laurent() const { return laurent_; }
    cplx center_value() const { return f0_; }
    // disk only: the normalizing Möbius map applied after the symmetric solve.
    const MobiusMap& normalization() const { return normalization_; }
    // disk only: max |f(p) - p| over p in {1, i, -1} on the sampled boundary.
    double normalization_residual() const;

    cplx evaluate(cplx z) const;
    cplx dz(cplx z) const;
    cplx dzbar(cplx z) const;
    // Damped Newton on the interpolant; seeded from the nearest grid
    // preimage when no seed is given.
    cplx inverse_evaluate(cplx w, std::optional<cplx> seed = std::nullopt,
                          const Config& cfg = default_config()) const;
    cplx nearest_preimage(cplx w) const;

    // disk only: boundary restriction sampled at n points.
    CircleMap boundary_map(int n = 2048) const;

    nlohmann::json metadata() const;
    static SolvedMap from_files(const BeltramiField& source, const nlohmann::json& meta,
                                const ComplexGridFunction& inner, const ComplexGridFunction& outer);

private:
    friend SolvedMap solve_bers(const BeltramiField&, const Config&);
    friend SolvedMap solve_disk(const BeltramiField&, const Config&);
    explicit SolvedMap(BeltramiField source) : source_(std::move(source)) {}
    void build_interpolants();

    MapKind kind_ = MapKind::bers;
    BeltramiField source_;
    ComplexGridFunction f_inner_, f_outer_, dz_, dzbar_;
    std::vector<cplx> boundary_;
    std::vector<cplx> boundary_log_modes_;  // disk: modes of s on the unit circle
    double dbar_residual_ = 0.0;
    int neumann_terms_ = 0;
    std::vector<double> increments_;
    std::vector<cplx> laurent_;
    cplx f0_ = 0.0;
    MobiusMap normalization_;
    PolarInterpolator smooth_, dz_interp_, dzbar_interp_;
};

SolvedMap solve_bers(const BeltramiField& mu, const Config& cfg = default_config());
SolvedMap solve_disk(const BeltramiField& nu, const Config& cfg = default_config());
double maximal_dilatation(const BeltramiField& mu);

// Symmetric extension across the circle used by the disk solve:
// nu(1/conj z) conj-ed and rotated by z^2/conj(z)^2.
cplx reflected_dilatation(const BeltramiField& nu, cplx z);

// Wirtinger derivatives of polar samples by spectral differentiation in
// angle and four-point finite differences in radius; independent of the
// solver's own derivative samples.
struct PolarDerivatives {
    std::vector<cplx> dz, dzbar;
};
PolarDerivatives polar_derivatives(const std::vector<double>& radii, int n_theta, const std::vector<cplx>& values);

// Shared kernels for a grid (tables are built once per GridSpec).
std::shared_ptr<const PolarKernels> kernels_for(const GridSpec& spec);

}  // namespace teich
