#pragma once

#include <vector>

#include "teich/fft.hpp"
#include "teich/grid.hpp"

namespace teich {

enum class Exec { parallel, reference };

// Angular Fourier modes of a polar sample set: row j holds the FFT-layout
// coefficients (divided by n) of circle j.
struct ModeField {
    int rows = 0;
    int n = 0;
    std::vector<cplx> data;

    ModeField() = default;
    ModeField(int rows, int n) : rows(rows), n(n), data(static_cast<std::size_t>(rows) * n) {}
    cplx& at(int row, int slot) { return data[static_cast<std::size_t>(row) * n + slot]; }
    cplx at(int row, int slot) const { return data[static_cast<std::size_t>(row) * n + slot]; }
    cplx mode(int row, int m) const { return at(row, Fft::slot(m, n)); }
};

// Singular integral operators on the unit disk acting mode by mode.
//
// Inputs are the modes of g on the circles r_0 < ... < r_{M-1} of the
// disk, and represent h = rho^s g with s in {0, -1}. Radial integrals use
// piecewise cubic interpolation of each mode with Gauss-Legendre points on
// every interval [0, r_0], [r_0, r_1], ..., [r_{M-1}, 1].
//
// The parallel path runs O(M) recurrences per mode with precomputed
// weights, distributed over modes with OpenMP. The reference path sums
// the same quadrature directly in O(M^2) per mode on one thread.
class PolarKernels {
public:
    PolarKernels(std::vector<double> radii, int n_theta, int gauss_points = 8);

    int circles() const { return M_; }
    int n() const { return n_; }
    const std::vector<double>& radii() const { return radii_; }

    ModeField analyze(const std::vector<cplx>& values, int rows) const;
    std::vector<cplx> synthesize(const ModeField& modes) const;

    // Modes of rho^{-s} T[h] on the M circles (T the Beurling transform).
    ModeField beurling(const ModeField& g, int s, Exec exec = Exec::parallel) const;
    // Modes of C[h] on the M circles and on |z| = 1 (row M), with
    // C[h](z) = -(1/pi) int h(zeta)/(zeta - z) dA.
    ModeField cauchy(const ModeField& g, int s, Exec exec = Exec::parallel) const;
    // int_0^1 g_m(rho) rho^{q+e} d rho.
    cplx moment(const ModeField& g, int m, int q, int e, Exec exec = Exec::parallel) const;

    // Radial primitives for one column, exposed for tests.
    // inner: out[t] = int_0^{R_t} g(rho) (rho/R_t)^q rho^e, t = 0..M, R_M = 1.
    // outer: out[t] = int_{r_t}^1 g(rho) (r_t/rho)^k rho^e, t = 0..M-1.
    void inner(const cplx* col, int stride, int q, int e, cplx* out, Exec exec) const;
    void outer(const cplx* col, int stride, int k, int e, cplx* out, Exec exec) const;

private:
    struct Table {
        int e = 0;
        std::vector<double> w;  // [(q * (M + 1) + t) * 4 + c]
    };

    double left(int t) const { return t == 0 ? 0.0 : radii_[t - 1]; }
    double right(int t) const { return t == M_ ? 1.0 : radii_[t]; }
    int stencil(int t) const;
    const Table& inner_table(int e) const;
    const Table& outer_table(int e) const;

    std::vector<double> radii_;
    int n_;
    int M_;
    int qmax_;
    std::vector<double> gx_, gw_;
    std::vector<double> ratio_pow_;  // (left/right)^q at [q * (M + 1) + t]
    std::vector<Table> inner_tables_, outer_tables_;
};

}  // namespace teich
