#include "teich/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "teich/errors.hpp"
#include "teich/numerics.hpp"

namespace teich {

PolarKernels::PolarKernels(std::vector<double> radii, int n_theta, int gauss_points)
    : radii_(std::move(radii)), n_(n_theta), M_(static_cast<int>(radii_.size())), qmax_(n_theta / 2 + 2) {
    if (M_ < 4) throw ArgumentError("PolarKernels needs at least 4 circles");
    GaussRule rule = gauss_legendre(gauss_points);
    gx_ = rule.nodes;
    gw_ = rule.weights;

    ratio_pow_.assign(static_cast<std::size_t>(qmax_ + 1) * (M_ + 1), 0.0);
    for (int q = 0; q <= qmax_; ++q)
        for (int t = 0; t <= M_; ++t)
            ratio_pow_[q * (M_ + 1) + t] = t == 0 ? (q == 0 ? 1.0 : 0.0) : std::pow(left(t) / right(t), q);

    auto build = [&](int e, bool is_inner) {
        Table tab;
        tab.e = e;
        tab.w.assign(static_cast<std::size_t>(qmax_ + 1) * (M_ + 1) * 4, 0.0);
        double lw[4];
        for (int t = 0; t <= M_; ++t) {
            if (!is_inner && t == 0) continue;
            const double a = left(t), b = right(t), half = 0.5 * (b - a);
            const int s = stencil(t);
            for (std::size_t p = 0; p < gx_.size(); ++p) {
                const double rho = 0.5 * (a + b) + half * gx_[p];
                lagrange_weights(&radii_[s], 4, rho, lw);
                const double base = gw_[p] * half * std::pow(rho, e);
                const double lr = is_inner ? std::log(rho / b) : std::log(a / rho);
                for (int q = 0; q <= qmax_; ++q) {
                    const double f = base * std::exp(q * lr);
                    double* w = &tab.w[(static_cast<std::size_t>(q) * (M_ + 1) + t) * 4];
                    for (int c = 0; c < 4; ++c) w[c] += f * lw[c];
                }
            }
        }
        return tab;
    };
    for (int e : {-1, 0, 1}) inner_tables_.push_back(build(e, true));
    for (int e : {-2, -1, 0}) outer_tables_.push_back(build(e, false));
}

int PolarKernels::stencil(int t) const { return std::clamp(t - 2, 0, M_ - 4); }

const PolarKernels::Table& PolarKernels::inner_table(int e) const {
    for (const auto& t : inner_tables_)
        if (t.e == e) return t;
    throw ArgumentError("no inner table for exponent");
}

const PolarKernels::Table& PolarKernels::outer_table(int e) const {
    for (const auto& t : outer_tables_)
        if (t.e == e) return t;
    throw ArgumentError("no outer table for exponent");
}

void PolarKernels::inner(const cplx* col, int stride, int q, int e, cplx* out, Exec exec) const {
    if (q < 0 || q > qmax_) throw ArgumentError("inner power out of range");
    if (exec == Exec::parallel) {
        const Table& tab = inner_table(e);
        cplx acc = 0.0;
        for (int t = 0; t <= M_; ++t) {
            const double* w = &tab.w[(static_cast<std::size_t>(q) * (M_ + 1) + t) * 4];
            const int s = stencil(t);
            cplx local = w[0] * col[s * stride] + w[1] * col[(s + 1) * stride] + w[2] * col[(s + 2) * stride] +
                         w[3] * col[(s + 3) * stride];
            acc = ratio_pow_[q * (M_ + 1) + t] * acc + local;
            out[t] = acc;
        }
        return;
    }
    double lw[4];
    for (int t = 0; t <= M_; ++t) {
        const double R = right(t);
        cplx acc = 0.0;
        for (int u = 0; u <= t; ++u) {
            const double a = left(u), b = right(u), half = 0.5 * (b - a);
            const int s = stencil(u);
            for (std::size_t p = 0; p < gx_.size(); ++p) {
                const double rho = 0.5 * (a + b) + half * gx_[p];
                lagrange_weights(&radii_[s], 4, rho, lw);
                cplx g = 0.0;
                for (int c = 0; c < 4; ++c) g += lw[c] * col[(s + c) * stride];
                acc += gw_[p] * half * std::pow(rho / R, q) * std::pow(rho, e) * g;
            }
        }
        out[t] = acc;
    }
}

void PolarKernels::outer(const cplx* col, int stride, int k, int e, cplx* out, Exec exec) const {
    if (k < 0 || k > qmax_) throw ArgumentError("outer power out of range");
    if (exec == Exec::parallel) {
        const Table& tab = outer_table(e);
        cplx acc = 0.0;
        for (int t = M_; t >= 1; --t) {
            const double* w = &tab.w[(static_cast<std::size_t>(k) * (M_ + 1) + t) * 4];
            const int s = stencil(t);
            cplx local = w[0] * col[s * stride] + w[1] * col[(s + 1) * stride] + w[2] * col[(s + 2) * stride] +
                         w[3] * col[(s + 3) * stride];
            acc = ratio_pow_[k * (M_ + 1) + t] * acc + local;
            out[t - 1] = acc;
        }
        return;
    }
    double lw[4];
    for (int j = 0; j < M_; ++j) {
        const double r = radii_[j];
        cplx acc = 0.0;
        for (int u = j + 1; u <= M_; ++u) {
            const double a = left(u), b = right(u), half = 0.5 * (b - a);
            const int s = stencil(u);
            for (std::size_t p = 0; p < gx_.size(); ++p) {
                const double rho = 0.5 * (a + b) + half * gx_[p];
                lagrange_weights(&radii_[s], 4, rho, lw);
                cplx g = 0.0;
                for (int c = 0; c < 4; ++c) g += lw[c] * col[(s + c) * stride];
                acc += gw_[p] * half * std::pow(r / rho, k) * std::pow(rho, e) * g;
            }
        }
        out[j] = acc;
    }
}

ModeField PolarKernels::analyze(const std::vector<cplx>& values, int rows) const {
    if (values.size() != static_cast<std::size_t>(rows) * n_) throw ArgumentError("analyze size mismatch");
    ModeField m(rows, n_);
    Fft fft(n_);
    const double scale = 1.0 / n_;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < rows; ++j) {
        fft.forward(&values[static_cast<std::size_t>(j) * n_], &m.data[static_cast<std::size_t>(j) * n_]);
        for (int k = 0; k < n_; ++k) m.data[static_cast<std::size_t>(j) * n_ + k] *= scale;
    }
    return m;
}

std::vector<cplx> PolarKernels::synthesize(const ModeField& modes) const {
    std::vector<cplx> out(modes.data.size());
    Fft fft(n_);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < modes.rows; ++j)
        fft.backward(&modes.data[static_cast<std::size_t>(j) * n_], &out[static_cast<std::size_t>(j) * n_]);
    return out;
}

ModeField PolarKernels::beurling(const ModeField& g, int s, Exec exec) const {
    if (g.rows < M_ || g.n != n_) throw ArgumentError("beurling input shape mismatch");
    if (s != 0 && s != -1) throw ArgumentError("beurling weight shift must be 0 or -1");
    ModeField out(M_, n_);
    auto body = [&](int kslot, std::vector<cplx>& buf) {
        const int k = Fft::mode(kslot, n_);
        const int src = k + 2;
        if (src >= n_ / 2) return;
        const cplx* col = &g.data[Fft::slot(src, n_)];
        for (int j = 0; j < M_; ++j) out.at(j, kslot) = col[static_cast<std::size_t>(j) * n_];
        if (k <= -2) {
            const int q = -k - 1;
            inner(col, n_, q, s, buf.data(), exec);
            for (int j = 0; j < M_; ++j)
                out.at(j, kslot) += 2.0 * (k + 1) * std::pow(radii_[j], -1 - s) * buf[j];
        } else if (k >= 0) {
            outer(col, n_, k, s - 1, buf.data(), exec);
            for (int j = 0; j < M_; ++j) out.at(j, kslot) += -2.0 * (k + 1) * std::pow(radii_[j], -s) * buf[j];
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<cplx> buf(M_ + 1);
#pragma omp for schedule(dynamic, 4)
            for (int kslot = 0; kslot < n_; ++kslot) body(kslot, buf);
        }
    } else {
        std::vector<cplx> buf(M_ + 1);
        for (int kslot = 0; kslot < n_; ++kslot) body(kslot, buf);
    }
    return out;
}

ModeField PolarKernels::cauchy(const ModeField& g, int s, Exec exec) const {
    if (g.rows < M_ || g.n != n_) throw ArgumentError("cauchy input shape mismatch");
    if (s != 0 && s != -1) throw ArgumentError("cauchy weight shift must be 0 or -1");
    ModeField out(M_ + 1, n_);
    auto body = [&](int kslot, std::vector<cplx>& buf) {
        const int k = Fft::mode(kslot, n_);
        const int src = k + 1;
        if (src >= n_ / 2) return;
        const cplx* col = &g.data[Fft::slot(src, n_)];
        if (k <= -1) {
            inner(col, n_, -k, s, buf.data(), exec);
            for (int t = 0; t <= M_; ++t) out.at(t, kslot) = 2.0 * buf[t];
        } else {
            outer(col, n_, k, s, buf.data(), exec);
            for (int j = 0; j < M_; ++j) out.at(j, kslot) = -2.0 * buf[j];
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<cplx> buf(M_ + 1);
#pragma omp for schedule(dynamic, 4)
            for (int kslot = 0; kslot < n_; ++kslot) body(kslot, buf);
        }
    } else {
        std::vector<cplx> buf(M_ + 1);
        for (int kslot = 0; kslot < n_; ++kslot) body(kslot, buf);
    }
    return out;
}

cplx PolarKernels::moment(const ModeField& g, int m, int q, int e, Exec exec) const {
    std::vector<cplx> buf(M_ + 1);
    inner(&g.data[Fft::slot(m, n_)], n_, q, e, buf.data(), exec);
    return buf[M_];
}

}  // namespace teich
