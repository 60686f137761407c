#include <cmath>
#include <random>

#include "support.hpp"
#include "teich/fft.hpp"
#include "teich/numerics.hpp"

using namespace teich;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    for (int n : {2, 4, 8, 16}) {
        GaussRule g = gauss_legendre(n);
        REQUIRE(g.nodes.size() == static_cast<std::size_t>(n));
        for (int d = 0; d < 2 * n; ++d) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += g.weights[k] * std::pow(g.nodes[k], d);
            double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("lagrange weights reproduce cubics") {
    double xs[4] = {0.1, 0.3, 0.45, 0.9};
    double w[4];
    for (double x : {0.0, 0.2, 0.5, 1.2}) {
        lagrange_weights(xs, 4, x, w);
        double s = 0.0, ex = x * x * x - 2 * x + 1;
        for (int k = 0; k < 4; ++k) s += w[k] * (xs[k] * xs[k] * xs[k] - 2 * xs[k] + 1);
        CHECK(s == doctest::Approx(ex).epsilon(1e-12));
    }
}

TEST_CASE("cumulative integral") {
    std::vector<double> x, y;
    for (int k = 0; k <= 40; ++k) {
        double t = std::pow(k / 40.0, 1.5);
        x.push_back(t);
        y.push_back(std::cos(3 * t));
    }
    auto c = cumulative_integral(x, y);
    for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(c[k] - std::sin(3 * x[k]) / 3) < 1e-6);
}

TEST_CASE("nelder-mead finds a smooth maximum") {
    auto [x, y] = maximize_2d([](double a, double b) { return -(a - 0.3) * (a - 0.3) - 2 * (b + 0.1) * (b + 0.1); },
                              0.0, 0.0, 0.2);
    CHECK(std::abs(x - 0.3) < 1e-5);
    CHECK(std::abs(y + 0.1) < 1e-5);
}

TEST_CASE("holder ladder separates regularity") {
    const int n = 4096;
    const double h = 2 * pi / n;
    std::vector<double> smooth(n), cusp(n);
    for (int i = 0; i < n; ++i) {
        double t = i * h;
        smooth[i] = std::sin(t);
        cusp[i] = std::sqrt(std::abs(2 * std::sin(t / 2)));
    }
    auto s = holder_ladder(smooth, h, {0.25, 0.5, 0.75, 0.95}, true);
    for (const auto& e : s) CHECK(e.finite);
    auto c = holder_ladder(cusp, h, {0.25, 0.45, 0.75, 0.95}, true);
    CHECK(c[0].finite);
    CHECK(c[1].finite);
    CHECK_FALSE(c[2].finite);
    CHECK_FALSE(c[3].finite);
}

TEST_CASE("monotone cubic") {
    std::vector<double> x{0, 1, 2, 3, 4}, y{0, 0.1, 0.1, 2, 2.5};
    MonotoneCubic m(x, y);
    double prev = -1;
    for (double t = 0; t <= 4; t += 0.01) {
        double v = m(t);
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
    for (std::size_t k = 0; k < x.size(); ++k) CHECK(m(x[k]) == doctest::Approx(y[k]));
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
    std::vector<int> hit(50, 0);
    try {
        parallel_for(50, [&](int k) {
            hit[k] = 1;
            if (k == 7 || k == 31) throw std::runtime_error(std::to_string(k));
        });
        FAIL("no exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "7");
    }
    int total = 0;
    for (int v : hit) total += v;
    CHECK(total == 50);
}

TEST_CASE("fft round trip and conventions") {
    const int n = 64;
    std::vector<cplx> v(n);
    for (int j = 0; j < n; ++j) v[j] = std::polar(1.0, 3 * 2 * pi * j / n) + 0.5 * std::polar(1.0, -2 * 2 * pi * j / n);
    auto c = fourier_coefficients(v);
    CHECK(std::abs(c[Fft::slot(3, n)] - 1.0) < 1e-14);
    CHECK(std::abs(c[Fft::slot(-2, n)] - 0.5) < 1e-14);
    auto back = synthesize(c, n);
    for (int j = 0; j < n; ++j) CHECK(std::abs(back[j] - v[j]) < 1e-14);
    auto up = synthesize(c, 2 * n);
    CHECK(std::abs(up[2] - v[1]) < 1e-13);
    CHECK(Fft::mode(Fft::slot(-5, n), n) == -5);
}
