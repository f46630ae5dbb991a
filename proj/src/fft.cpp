#include "rqk/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqk {

void fft_inplace(std::complex<double>* data, std::size_t n) {
    if (n == 0 || !std::has_single_bit(n))
        throw std::invalid_argument("fft: length must be a nonzero power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = data[i + k];
                std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void fft_inplace(std::vector<std::complex<double>>& data) {
    fft_inplace(data.data(), data.size());
}

std::vector<double> hann_window(int n) {
    if (n < 1) throw std::invalid_argument("hann_window: length must be >= 1");
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        w[static_cast<std::size_t>(k)] =
            0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / n));
    return w;
}

}  // namespace rqk
