#include "teich/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "teich/errors.hpp"
#include "teich/fft.hpp"
#include "teich/numerics.hpp"

namespace teich {

std::string to_string(MapKind k) { return k == MapKind::bers ? "bers" : "disk_self_map"; }

std::shared_ptr<const PolarKernels> kernels_for(const GridSpec& spec) {
    static std::mutex mtx;
    static std::map<std::string, std::shared_ptr<const PolarKernels>> cache;
    const std::string key = spec.hash();
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto k = std::make_shared<const PolarKernels>(spec.radii_inner, spec.n_theta);
    cache[key] = k;
    return k;
}

double maximal_dilatation(const BeltramiField& mu) {
    double k = mu.sup_bound();
    return (1.0 + k) / (1.0 - k);
}

cplx reflected_dilatation(const BeltramiField& nu, cplx z) {
    if (std::abs(z) <= 1.0) return nu.evaluate(z);
    cplx zs = 1.0 / std::conj(z);
    cplx rot = z / std::conj(z);
    return std::conj(nu.evaluate(zs)) * rot * rot;
}

PolarDerivatives polar_derivatives(const std::vector<double>& radii, int n, const std::vector<cplx>& values) {
    const int M = static_cast<int>(radii.size());
    if (M < 4 || values.size() != static_cast<std::size_t>(M) * n) throw ArgumentError("polar_derivatives shape");
    PolarDerivatives out{std::vector<cplx>(values.size()), std::vector<cplx>(values.size())};
    Fft fft(n);
    std::vector<cplx> coeffs(n), ftheta(n);
    for (int j = 0; j < M; ++j) {
        fft.forward(&values[static_cast<std::size_t>(j) * n], coeffs.data());
        for (int k = 0; k < n; ++k) {
            int m = Fft::mode(k, n);
            coeffs[k] *= (m == -n / 2 ? 0.0 : 1.0) * cplx(0.0, m) / static_cast<double>(n);
        }
        fft.backward(coeffs.data(), ftheta.data());
        const int s = std::clamp(j - 1, 0, M - 4);
        double w[4];
        for (int a = 0; a < 4; ++a) {
            double acc = 0.0;
            for (int b = 0; b < 4; ++b) {
                if (b == a) continue;
                double term = 1.0 / (radii[s + a] - radii[s + b]);
                for (int c = 0; c < 4; ++c)
                    if (c != a && c != b) term *= (radii[j] - radii[s + c]) / (radii[s + a] - radii[s + c]);
                acc += term;
            }
            w[a] = acc;
        }
        const double r = radii[j];
        for (int i = 0; i < n; ++i) {
            cplx fr = 0.0;
            for (int a = 0; a < 4; ++a) fr += w[a] * values[static_cast<std::size_t>(s + a) * n + i];
            double th = 2.0 * pi * i / n;
            cplx e = std::polar(1.0, th);
            cplx ft = ftheta[i] * (I / r);
            out.dz[static_cast<std::size_t>(j) * n + i] = 0.5 * std::conj(e) * (fr - ft);
            out.dzbar[static_cast<std::size_t>(j) * n + i] = 0.5 * e * (fr + ft);
        }
    }
    return out;
}

namespace {

// Winding number of a closed sampled curve around c.
int winding(const cplx* v, int n, cplx c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += std::arg((v[(i + 1) % n] - c) / (v[i] - c));
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

std::vector<double> with_unit(const std::vector<double>& radii) {
    std::vector<double> r = radii;
    r.push_back(1.0);
    return r;
}

}  // namespace

void SolvedMap::build_interpolants() {
    const auto& spec = this->spec();
    const int M = static_cast<int>(spec.radii_inner.size()), N = spec.n_theta;
    std::vector<cplx> smooth(static_cast<std::size_t>(M + 1) * N);
    for (int j = 0; j <= M; ++j)
        for (int i = 0; i < N; ++i) {
            double r = j < M ? spec.radii_inner[j] : 1.0;
            cplx z = std::polar(r, spec.theta(i));
            cplx f = j < M ? f_inner_.at(j, i) : boundary_[i];
            if (kind_ == MapKind::bers)
                smooth[static_cast<std::size_t>(j) * N + i] = f - z;
            else
                smooth[static_cast<std::size_t>(j) * N + i] = normalization_.inverse()(f) / z;
        }
    smooth_ = PolarInterpolator(with_unit(spec.radii_inner), N, std::move(smooth));
    dz_interp_ = PolarInterpolator(spec.radii_inner, N, dz_.values());
    dzbar_interp_ = PolarInterpolator(spec.radii_inner, N, dzbar_.values());
}

cplx SolvedMap::evaluate(cplx z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ChartError("non-finite evaluation point");
    double r = std::abs(z);
    if (kind_ == MapKind::disk_self_map) {
        if (r > 1.0 + 1e-9) throw ChartError("disk self-map evaluated outside the closed disk");
        if (r == 0.0) return normalization_(0.0);
        return normalization_(z * smooth_.at_point(z));
    }
    if (r <= 1.0) return z + smooth_.at_point(z);
    cplx w = 1.0 / z, acc = 0.0;
    for (int n = static_cast<int>(laurent_.size()); n >= 1; --n) acc = (acc + laurent_[n - 1]) * w;
    return z + acc;
}

cplx SolvedMap::dz(cplx z) const {
    if (kind_ == MapKind::bers && std::abs(z) > 1.0) {
        cplx w = 1.0 / z, acc = 0.0;
        for (int n = static_cast<int>(laurent_.size()); n >= 1; --n) acc = (acc + double(n) * laurent_[n - 1]) * w;
        return 1.0 - acc * w;
    }
    if (std::abs(z) > 1.0 + 1e-9) throw ChartError("derivative requested outside the disk");
    return dz_interp_.at_point(z);
}

cplx SolvedMap::dzbar(cplx z) const {
    if (kind_ == MapKind::bers && std::abs(z) > 1.0) return 0.0;
    if (std::abs(z) > 1.0 + 1e-9) throw ChartError("derivative requested outside the disk");
    return dzbar_interp_.at_point(z);
}

cplx SolvedMap::nearest_preimage(cplx w) const {
    const auto& spec = this->spec();
    cplx best = 0.0;
    double bd = INFINITY;
    for (int j = 0; j < f_inner_.circles(); ++j)
        for (int i = 0; i < f_inner_.n(); ++i) {
            double d = std::abs(f_inner_.at(j, i) - w);
            if (d < bd) {
                bd = d;
                best = f_inner_.point(j, i);
            }
        }
    for (int i = 0; i < spec.n_theta; ++i) {
        double d = std::abs(boundary_[i] - w);
        if (d < bd) {
            bd = d;
            best = std::polar(1.0, spec.theta(i));
        }
    }
    if (kind_ == MapKind::bers)
        for (int j = 0; j < f_outer_.circles(); ++j)
            for (int i = 0; i < f_outer_.n(); ++i) {
                double d = std::abs(f_outer_.at(j, i) - w);
                if (d < bd) {
                    bd = d;
                    best = f_outer_.point(j, i);
                }
            }
    return best;
}

cplx SolvedMap::inverse_evaluate(cplx w, std::optional<cplx> seed, const Config& cfg) const {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw ChartError("non-finite inversion target");
    if (kind_ == MapKind::disk_self_map && std::abs(w) > 1.0 + 1e-9)
        throw ChartError("disk self-map inverse requested outside the disk");
    cplx z = seed ? *seed : nearest_preimage(w);
    auto clamp = [&](cplx x) {
        if (kind_ == MapKind::disk_self_map && std::abs(x) > 1.0) return x / std::abs(x);
        return x;
    };
    z = clamp(z);
    const double tol = cfg.inversion_tol * std::max(1.0, std::abs(w));
    cplx res = w - evaluate(z);
    for (int step = 0; step < cfg.inversion_max_steps; ++step) {
        if (std::abs(res) <= tol) return z;
        cplx p = dz(z), q = dzbar(z);
        double jac = std::norm(p) - std::norm(q);
        if (!(jac > 0.0)) throw InversionError("non-positive Jacobian during inversion", std::abs(res));
        cplx delta = (std::conj(p) * res - q * std::conj(res)) / jac;
        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h < 30; ++h) {
            cplx zn = clamp(z + lambda * delta);
            cplx rn = w - evaluate(zn);
            if (std::abs(rn) < std::abs(res)) {
                z = zn;
                res = rn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            if (std::abs(res) <= 1e3 * tol) return z;
            throw InversionError("Newton inversion stalled", std::abs(res));
        }
    }
    if (std::abs(res) <= 1e3 * tol) return z;
    throw InversionError("Newton inversion did not converge", std::abs(res));
}

CircleMap SolvedMap::boundary_map(int n) const {
    if (kind_ != MapKind::disk_self_map) throw ArgumentError("boundary_map requires a disk self-map");
    const int N = spec().n_theta;
    std::vector<cplx> ds(boundary_log_modes_.size());
    for (int k = 0; k < N; ++k) {
        int m = Fft::mode(k, N);
        ds[k] = (m == -N / 2 ? 0.0 : 1.0) * cplx(0.0, m) * boundary_log_modes_[k];
    }
    std::vector<cplx> s = synthesize(boundary_log_modes_, n), sp = synthesize(ds, n);
    std::vector<double> lift(n), deriv(n);
    for (int i = 0; i < n; ++i) {
        lift[i] = 2.0 * pi * i / n + s[i].imag();
        deriv[i] = 1.0 + sp[i].imag();
    }
    return CircleMap(std::move(lift), std::move(deriv)).post_mobius(normalization_);
}

static nlohmann::json cvec(const std::vector<cplx>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : v) a.push_back({c.real(), c.imag()});
    return a;
}

static std::vector<cplx> cvec_from(const nlohmann::json& a) {
    std::vector<cplx> v;
    for (const auto& e : a) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return v;
}

double SolvedMap::normalization_residual() const {
    if (kind_ != MapKind::disk_self_map || boundary_.empty()) return 0.0;
    const int N = static_cast<int>(boundary_.size());
    double r = 0.0;
    for (int k = 0; k < 3; ++k) {
        int idx = k * N / 4;
        r = std::max(r, std::abs(boundary_[idx] - std::polar(1.0, 2.0 * pi * idx / N)));
    }
    return r;
}

nlohmann::json SolvedMap::metadata() const {
    return {{"kind", to_string(kind_)},
            {"dbar_residual", dbar_residual_},
            {"neumann_terms", neumann_terms_},
            {"source_grid_hash", spec().hash()},
            {"source_hash", source_.content_hash()},
            {"increments", increments_},
            {"laurent", cvec(laurent_)},
            {"center_value", {f0_.real(), f0_.imag()}},
            {"normalization", normalization_.to_json()},
            {"normalization_residual", normalization_residual()},
            {"boundary", cvec(boundary_)}};
}

SolvedMap SolvedMap::from_files(const BeltramiField& source, const nlohmann::json& meta,
                                const ComplexGridFunction& inner, const ComplexGridFunction& outer) {
    SolvedMap f(source);
    try {
        if (meta.at("source_grid_hash").get<std::string>() != source.spec().hash())
            throw ConsistencyError("solved map belongs to a different grid");
        if (meta.contains("source_hash") && meta.at("source_hash").get<std::string>() != source.content_hash())
            throw ConsistencyError("solved map was computed from a different coefficient");
        f.kind_ = meta.at("kind").get<std::string>() == "bers" ? MapKind::bers : MapKind::disk_self_map;
        f.dbar_residual_ = meta.at("dbar_residual").get<double>();
        f.neumann_terms_ = meta.at("neumann_terms").get<int>();
        f.increments_ = meta.value("increments", std::vector<double>{});
        f.laurent_ = cvec_from(meta.at("laurent"));
        f.f0_ = {meta.at("center_value").at(0).get<double>(), meta.at("center_value").at(1).get<double>()};
        f.normalization_ = MobiusMap::from_json(meta.at("normalization"));
        f.boundary_ = cvec_from(meta.at("boundary"));
    } catch (const nlohmann::json::exception& ex) {
        throw ArgumentError(std::string("malformed solved-map metadata: ") + ex.what());
    }
    const auto& spec = source.spec();
    const int N = spec.n_theta;
    if (static_cast<int>(f.boundary_.size()) != N) throw ArgumentError("boundary sample count mismatch");
    f.f_inner_ = inner;
    f.f_outer_ = outer;
    // Derivatives are rebuilt from the forward samples, including the unit circle.
    std::vector<cplx> rows = inner.values();
    rows.insert(rows.end(), f.boundary_.begin(), f.boundary_.end());
    PolarDerivatives d = polar_derivatives(with_unit(spec.radii_inner), N, rows);
    d.dz.resize(inner.size());
    d.dzbar.resize(inner.size());
    f.dz_ = ComplexGridFunction(spec, Chart::disk, std::move(d.dz));
    f.dzbar_ = ComplexGridFunction(spec, Chart::disk, std::move(d.dzbar));
    if (f.kind_ == MapKind::disk_self_map) {
        MobiusMap inv = f.normalization_.inverse();
        std::vector<double> raw(N);
        for (int i = 0; i < N; ++i) raw[i] = std::arg(inv(f.boundary_[i]) * std::polar(1.0, -spec.theta(i)));
        std::vector<cplx> s(N);
        double prev = raw[0];
        double acc = raw[0];
        for (int i = 0; i < N; ++i) {
            if (i > 0) acc += std::remainder(raw[i] - prev, 2.0 * pi);
            prev = raw[i];
            s[i] = cplx(0.0, acc);
        }
        f.boundary_log_modes_ = fourier_coefficients(s);
    }
    f.build_interpolants();
    return f;
}

SolvedMap solve_bers(const BeltramiField& mu, const Config& cfg) {
    if (mu.sup_bound() > cfg.budget) throw BudgetError("sup |mu| exceeds the solver budget");
    const GridSpec& spec = mu.spec();
    auto K = kernels_for(spec);
    const int M = K->circles(), N = K->n();
    const std::vector<cplx>& mv = mu.samples().values();
    std::vector<cplx> h = mv;

    SolvedMap f(mu);
    f.kind_ = MapKind::bers;
    bool converged = false;
    double inc = 0.0;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        std::vector<cplx> Th = K->synthesize(K->beurling(K->analyze(h, M), 0));
        inc = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k) {
            cplx hn = mv[k] * (1.0 + Th[k]);
            inc = std::max(inc, std::abs(hn - h[k]));
            h[k] = hn;
        }
        f.increments_.push_back(inc);
        f.neumann_terms_ = it;
        if (inc <= cfg.solver_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw SolverError("Neumann series did not converge", inc);

    ModeField modes = K->analyze(h, M);
    std::vector<cplx> Th = K->synthesize(K->beurling(modes, 0));
    std::vector<cplx> Cv = K->synthesize(K->cauchy(modes, 0));

    f.f_inner_ = ComplexGridFunction(spec, Chart::disk);
    f.dz_ = ComplexGridFunction(spec, Chart::disk);
    f.dzbar_ = ComplexGridFunction(spec, Chart::disk, h);
    f.boundary_.resize(N);
    double resid = 0.0;
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < N; ++i) {
            std::size_t k = static_cast<std::size_t>(j) * N + i;
            f.f_inner_.at(j, i) = f.f_inner_.point(j, i) + Cv[k];
            f.dz_.at(j, i) = 1.0 + Th[k];
            resid = std::max(resid, std::abs(h[k] - mv[k] * (1.0 + Th[k])));
        }
    for (int i = 0; i < N; ++i) f.boundary_[i] = std::polar(1.0, spec.theta(i)) + Cv[static_cast<std::size_t>(M) * N + i];
    f.dbar_residual_ = resid;

    for (int n = 1; n < N / 2; ++n) f.laurent_.push_back(2.0 * K->moment(modes, 1 - n, n, 0));
    f.f0_ = -2.0 * K->moment(modes, 1, 0, 0);

    f.f_outer_ = ComplexGridFunction(spec, Chart::exterior);
    std::vector<cplx> coeffs(N);
    for (int j = 0; j < f.f_outer_.circles(); ++j) {
        double r = f.f_outer_.radii()[j];
        std::fill(coeffs.begin(), coeffs.end(), 0.0);
        for (int n = 1; n < N / 2; ++n) coeffs[Fft::slot(-n, N)] = f.laurent_[n - 1] * std::pow(r, -n);
        std::vector<cplx> v = synthesize(coeffs, N);
        for (int i = 0; i < N; ++i) f.f_outer_.at(j, i) = f.f_outer_.point(j, i) + v[i];
    }

    for (int j = 0; j < M; ++j)
        if (winding(&f.f_inner_.values()[static_cast<std::size_t>(j) * N], N, f.f0_) != 1)
            throw SolverError("fold detected: circle image does not wind once", resid);
    for (int j = 0; j < f.f_outer_.circles(); ++j)
        if (winding(&f.f_outer_.values()[static_cast<std::size_t>(j) * N], N, f.f0_) != 1)
            throw SolverError("fold detected on the exterior", resid);
    f.build_interpolants();
    return f;
}

SolvedMap solve_disk(const BeltramiField& nu, const Config& cfg) {
    if (nu.sup_bound() > cfg.budget) throw BudgetError("sup |nu| exceeds the solver budget");
    const GridSpec& spec = nu.spec();
    auto K = kernels_for(spec);
    const int M = K->circles(), N = K->n();
    const std::vector<cplx>& nv = nu.samples().values();
    const auto& radii = spec.radii_inner;
    std::vector<cplx> eneg(N);
    for (int i = 0; i < N; ++i) eneg[i] = std::polar(1.0, -spec.theta(i));

    std::vector<cplx> G(nv.size());
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < N; ++i) G[static_cast<std::size_t>(j) * N + i] = nv[static_cast<std::size_t>(j) * N + i] * eneg[i];

    // rho * s_z from the modes of G = rho * omega: Beurling part plus the
    // derivative of the holomorphic correction enforcing Re s = 0 on |z| = 1.
    auto rho_sz = [&](const ModeField& modes, std::vector<cplx>& moments) {
        ModeField B = K->beurling(modes, -1);
        moments.assign(N / 2, 0.0);
        for (int m = 0; m < N / 2; ++m) moments[m] = K->moment(modes, -m, m, 0);
        for (int m = 0; m < N / 2; ++m) {
            cplx c = -2.0 * (m + 1) * std::conj(moments[m]);
            int slot = Fft::slot(m, N);
            for (int j = 0; j < M; ++j) B.at(j, slot) += c * std::pow(radii[j], m + 1);
        }
        return K->synthesize(B);
    };

    SolvedMap f(nu);
    f.kind_ = MapKind::disk_self_map;
    std::vector<cplx> moments;
    bool converged = false;
    double inc = 0.0;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        std::vector<cplx> rs = rho_sz(K->analyze(G, M), moments);
        inc = 0.0;
        for (int j = 0; j < M; ++j)
            for (int i = 0; i < N; ++i) {
                std::size_t k = static_cast<std::size_t>(j) * N + i;
                cplx gn = nv[k] * (eneg[i] + rs[k]);
                inc = std::max(inc, std::abs(gn - G[k]));
                G[k] = gn;
            }
        f.increments_.push_back(inc);
        f.neumann_terms_ = it;
        if (inc <= cfg.solver_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw SolverError("disk Neumann series did not converge", inc);

    ModeField modes = K->analyze(G, M);
    std::vector<cplx> rs = rho_sz(modes, moments);
    ModeField S = K->cauchy(modes, -1);
    for (int m = 0; m + 1 < N / 2; ++m) {
        cplx c = -2.0 * std::conj(moments[m]);
        int slot = Fft::slot(m + 1, N);
        for (int j = 0; j < M; ++j) S.at(j, slot) += c * std::pow(radii[j], m + 1);
        S.at(M, slot) += c;
    }
    std::vector<cplx> sv = K->synthesize(S);
    f.boundary_log_modes_.assign(S.data.begin() + static_cast<std::ptrdiff_t>(M) * N, S.data.end());

    std::vector<cplx> Fb(N);
    for (int i = 0; i < N; ++i) Fb[i] = std::polar(1.0, spec.theta(i)) * std::exp(sv[static_cast<std::size_t>(M) * N + i]);
    MobiusMap m = mobius_from_triples(Fb[0], Fb[N / 4], Fb[N / 2], 1.0, I, -1.0);
    f.normalization_ = m;

    f.f_inner_ = ComplexGridFunction(spec, Chart::disk);
    f.dz_ = ComplexGridFunction(spec, Chart::disk);
    f.dzbar_ = ComplexGridFunction(spec, Chart::disk);
    double resid = 0.0;
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < N; ++i) {
            std::size_t k = static_cast<std::size_t>(j) * N + i;
            cplx z = f.f_inner_.point(j, i);
            cplx es = std::exp(sv[k]);
            cplx F = z * es;
            cplx e = std::conj(eneg[i]);
            cplx dF = es * (1.0 + e * rs[k]);
            cplx dbF = e * G[k] * es;
            cplx mp = m.derivative(F);
            f.f_inner_.at(j, i) = m(F);
            f.dz_.at(j, i) = mp * dF;
            f.dzbar_.at(j, i) = mp * dbF;
            resid = std::max(resid, std::abs(f.dzbar_.at(j, i) - nv[k] * f.dz_.at(j, i)));
        }
    f.boundary_.resize(N);
    for (int i = 0; i < N; ++i) f.boundary_[i] = m(Fb[i]);
    f.dbar_residual_ = resid;

    for (int j = 0; j < M; ++j)
        if (winding(&f.f_inner_.values()[static_cast<std::size_t>(j) * N], N, m(0.0)) != 1)
            throw SolverError("fold detected: circle image does not wind once", resid);
    f.build_interpolants();

    f.f_outer_ = ComplexGridFunction(spec, Chart::exterior);
    for (int j = 0; j < f.f_outer_.circles(); ++j)
        for (int i = 0; i < N; ++i) {
            cplx z = f.f_outer_.point(j, i);
            f.f_outer_.at(j, i) = 1.0 / std::conj(f.evaluate(1.0 / std::conj(z)));
        }
    return f;
}

}  // namespace teich
