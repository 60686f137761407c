#pragma once

#include <vector>

#include "teich/grid.hpp"

namespace teich {

// Thin FFTW wrapper. Plans are created once per size under a lock and
// executed through the new-array interface, so transforms are safe to run
// from concurrent threads.
class Fft {
public:
    explicit Fft(int n);
    int size() const { return n_; }
    // out[k] = sum_j in[j] exp(-2 pi i jk/n)
    void forward(const cplx* in, cplx* out) const;
    // out[j] = sum_k in[k] exp(+2 pi i jk/n)
    void backward(const cplx* in, cplx* out) const;

    // Index of signed mode m in an FFT array of length n.
    static int slot(int m, int n) { return m >= 0 ? m : m + n; }
    // Signed mode of FFT slot k in [-n/2, n/2).
    static int mode(int k, int n) { return k < n / 2 ? k : k - n; }

private:
    int n_;
    void* fwd_;
    void* bwd_;
};

// Fourier coefficients c_m (divided by n) of periodic samples.
std::vector<cplx> fourier_coefficients(const std::vector<cplx>& samples);
// Samples of sum_m c_m e^{i m theta} on an n-point grid, with c given in
// FFT layout of length c.size(); zero pads or truncates to n.
std::vector<cplx> synthesize(const std::vector<cplx>& coeffs, int n);

}  // namespace teich
