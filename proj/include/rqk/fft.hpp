#pragma once

#include <complex>
#include <vector>

namespace rqk {

// In-place radix-2 decimation-in-time FFT, unnormalized forward transform
// X[k] = sum_n x[n] exp(-2 pi i n k / N). Length must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data);
void fft_inplace(std::complex<double>* data, std::size_t n);

// Periodic Hann window of length n: w[k] = 0.5 (1 - cos(2 pi k / n)).
std::vector<double> hann_window(int n);

}  // namespace rqk
