#include <random>

#include "support.hpp"
#include "teich/kernels.hpp"
#include "teich/solver.hpp"

using namespace teich;

namespace {

std::vector<cplx> sample(const PolarKernels& K, const std::function<cplx(cplx)>& h) {
    std::vector<cplx> v(static_cast<std::size_t>(K.circles()) * K.n());
    for (int j = 0; j < K.circles(); ++j)
        for (int i = 0; i < K.n(); ++i) v[static_cast<std::size_t>(j) * K.n() + i] = h(std::polar(K.radii()[j], 2 * pi * i / K.n()));
    return v;
}

double max_diff(const ModeField& a, const ModeField& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.data.size(); ++k) m = std::max(m, std::abs(a.data[k] - b.data[k]));
    return m;
}

}  // namespace

TEST_CASE("cauchy transform of conj(z)^n") {
    auto K = kernels_for(test::grid());
    for (int n : {0, 1, 2}) {
        auto g = K->analyze(sample(*K, [n](cplx z) { return std::pow(std::conj(z), n); }), K->circles());
        auto out = K->synthesize(K->cauchy(g, 0));
        double err = 0.0;
        for (int j = 0; j <= K->circles(); ++j) {
            double r = j < K->circles() ? K->radii()[j] : 1.0;
            for (int i = 0; i < K->n(); i += 7) {
                cplx z = std::polar(r, 2 * pi * i / K->n());
                err = std::max(err, std::abs(out[static_cast<std::size_t>(j) * K->n() + i] - std::pow(std::conj(z), n + 1) / double(n + 1)));
            }
        }
        CHECK(err < 1e-6);
    }
}

TEST_CASE("beurling transform of z^n") {
    auto K = kernels_for(test::grid());
    for (int n : {1, 2, 3}) {
        auto g = K->analyze(sample(*K, [n](cplx z) { return std::pow(z, n); }), K->circles());
        auto out = K->synthesize(K->beurling(g, 0));
        double err = 0.0;
        for (int j = 0; j < K->circles(); ++j)
            for (int i = 0; i < K->n(); i += 5) {
                cplx z = std::polar(K->radii()[j], 2 * pi * i / K->n());
                cplx exact = double(n) * std::pow(z, n - 1) * std::conj(z) - (n > 1 ? double(n - 1) * std::pow(z, n - 2) : 0.0);
                err = std::max(err, std::abs(out[static_cast<std::size_t>(j) * K->n() + i] - exact));
            }
        CHECK(err < 1e-6);
    }
}

TEST_CASE("analyze and synthesize are inverse") {
    auto K = kernels_for(test::coarse());
    auto v = sample(*K, [](cplx z) { return std::exp(z) * std::conj(z); });
    auto back = K->synthesize(K->analyze(v, K->circles()));
    double err = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) err = std::max(err, std::abs(v[k] - back[k]));
    CHECK(err < 1e-13);
}

TEST_CASE("parallel kernels agree with the serial reference") {
    auto K = kernels_for(test::coarse());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> c(6);
    for (auto& x : c) x = cplx(u(rng), u(rng));
    auto v = sample(*K, [&](cplx z) {
        cplx zb = std::conj(z);
        return c[0] + c[1] * z + c[2] * zb + c[3] * z * zb + c[4] * zb * zb + c[5] * std::sin(3.0 * z);
    });
    auto g = K->analyze(v, K->circles());
    for (int s : {0, -1}) {
        CHECK(max_diff(K->beurling(g, s, Exec::parallel), K->beurling(g, s, Exec::reference)) < 1e-11);
        CHECK(max_diff(K->cauchy(g, s, Exec::parallel), K->cauchy(g, s, Exec::reference)) < 1e-11);
    }
    for (int m : {-2, 0, 3})
        for (int q : {0, 2})
            CHECK(std::abs(K->moment(g, m, q, 1, Exec::parallel) - K->moment(g, m, q, 1, Exec::reference)) < 1e-12);
}

TEST_CASE("radial primitives integrate polynomials") {
    auto K = kernels_for(test::grid());
    const int M = K->circles();
    std::vector<cplx> col(M, 0.0);
    for (int t = 0; t < M; ++t) col[t] = K->radii()[t] * K->radii()[t];
    std::vector<cplx> in(M + 1), out(M);
    for (Exec ex : {Exec::parallel, Exec::reference}) {
        K->inner(col.data(), 1, 0, 1, in.data(), ex);
        for (int t = 0; t <= M; ++t) {
            double R = t < M ? K->radii()[t] : 1.0;
            CHECK(std::abs(in[t] - std::pow(R, 4) / 4) < 1e-10);
        }
        K->outer(col.data(), 1, 0, 0, out.data(), ex);
        for (int t = 0; t < M; ++t) CHECK(std::abs(out[t] - (1 - std::pow(K->radii()[t], 3)) / 3) < 1e-10);
    }
}
