#include "teich/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "teich/errors.hpp"

namespace teich {

namespace {

std::mutex plan_mutex;
std::map<int, std::pair<fftw_plan, fftw_plan>> plan_cache;

std::pair<fftw_plan, fftw_plan> plans_for(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = plan_cache.find(n);
    if (it != plan_cache.end()) return it->second;
    fftw_complex* a = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_complex* b = fftw_alloc_complex(static_cast<std::size_t>(n));
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan f = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, flags);
    fftw_plan r = fftw_plan_dft_1d(n, a, b, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
    plan_cache[n] = {f, r};
    return {f, r};
}

}  // namespace

Fft::Fft(int n) : n_(n) {
    if (n <= 0) throw ArgumentError("fft size must be positive");
    auto p = plans_for(n);
    fwd_ = p.first;
    bwd_ = p.second;
}

void Fft::forward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void Fft::backward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

std::vector<cplx> fourier_coefficients(const std::vector<cplx>& samples) {
    const int n = static_cast<int>(samples.size());
    std::vector<cplx> out(n);
    Fft(n).forward(samples.data(), out.data());
    for (auto& c : out) c /= static_cast<double>(n);
    return out;
}

std::vector<cplx> synthesize(const std::vector<cplx>& coeffs, int n) {
    const int m = static_cast<int>(coeffs.size());
    std::vector<cplx> padded(n, 0.0);
    for (int k = 0; k < m; ++k) {
        int mode = Fft::mode(k, m);
        if (mode < -n / 2 || mode >= n / 2) continue;
        padded[Fft::slot(mode, n)] += coeffs[k];
    }
    std::vector<cplx> out(n);
    Fft(n).backward(padded.data(), out.data());
    return out;
}

}  // namespace teich
