#include "rqk/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqk {

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24)
        throw std::invalid_argument("Statevector: qubit count out of range");
    amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

void Statevector::apply_hadamard(int qubit) {
    if (qubit < 0 || qubit >= n_qubits_) throw std::invalid_argument("apply_hadamard: bad qubit");
    const std::size_t bit = std::size_t{1} << qubit;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (std::size_t z = 0; z < amps_.size(); ++z) {
        if (z & bit) continue;
        const std::complex<double> a = amps_[z];
        const std::complex<double> b = amps_[z | bit];
        amps_[z] = (a + b) * inv_sqrt2;
        amps_[z | bit] = (a - b) * inv_sqrt2;
    }
}

void Statevector::apply_phase(int qubit, double lambda) {
    if (qubit < 0 || qubit >= n_qubits_) throw std::invalid_argument("apply_phase: bad qubit");
    const std::size_t bit = std::size_t{1} << qubit;
    const std::complex<double> phase(std::cos(lambda), std::sin(lambda));
    for (std::size_t z = 0; z < amps_.size(); ++z)
        if (z & bit) amps_[z] *= phase;
}

void Statevector::apply_cx(int control, int target) {
    if (control < 0 || control >= n_qubits_ || target < 0 || target >= n_qubits_ ||
        control == target)
        throw std::invalid_argument("apply_cx: bad qubit pair");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t z = 0; z < amps_.size(); ++z)
        if ((z & cbit) && !(z & tbit)) std::swap(amps_[z], amps_[z | tbit]);
}

std::complex<double> Statevector::inner_product(const Statevector& other) const {
    if (other.n_qubits_ != n_qubits_)
        throw std::invalid_argument("inner_product: qubit count mismatch");
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t z = 0; z < amps_.size(); ++z) acc += std::conj(amps_[z]) * other.amps_[z];
    return acc;
}

double Statevector::norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

Statevector zz_feature_state(std::span<const double> x) {
    const int d = static_cast<int>(x.size());
    if (d < 1) throw std::invalid_argument("zz_feature_state: need at least one angle");
    Statevector state(d);
    for (int q = 0; q < d; ++q) state.apply_hadamard(q);
    for (int q = 0; q < d; ++q) state.apply_phase(q, 2.0 * x[static_cast<std::size_t>(q)]);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double lambda = 2.0 * (std::numbers::pi - x[static_cast<std::size_t>(i)]) *
                                  (std::numbers::pi - x[static_cast<std::size_t>(j)]);
            state.apply_cx(i, j);
            state.apply_phase(j, lambda);
            state.apply_cx(i, j);
        }
    }
    return state;
}

double oracle_kernel(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("oracle_kernel: dimension mismatch");
    const Statevector sx = zz_feature_state(x);
    const Statevector sy = zz_feature_state(y);
    return std::norm(sx.inner_product(sy));
}

}  // namespace rqk
