#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rqk {

// Small dense statevector simulator. Exists as an independent, gate-level
// check on the closed-form fidelity kernel: it never touches the phase-table
// arithmetic, only explicit gate applications on 2^n amplitudes.
class Statevector {
public:
    // |0...0> on n qubits; qubit q is bit q of the basis index
    explicit Statevector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

    void apply_hadamard(int qubit);
    // diag(1, e^{i lambda}) on one qubit
    void apply_phase(int qubit, double lambda);
    // basis-index permutation: flips target where the control bit is set
    void apply_cx(int control, int target);

    std::complex<double> inner_product(const Statevector& other) const;
    double norm() const;

private:
    int n_qubits_;
    std::vector<std::complex<double>> amps_;
};

// U_phi(x) |0>^d for the one-repetition ZZ feature map, built gate by gate:
// Hadamards, P(2 x_i), and CX . P(2 (pi-x_i)(pi-x_j)) . CX per pair i < j.
Statevector zz_feature_state(std::span<const double> x);

// |<psi(x)|psi(y)>|^2 via explicit statevectors.
double oracle_kernel(std::span<const double> x, std::span<const double> y);

}  // namespace rqk
