#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>

#include "rqk/features.hpp"

namespace rqk {

enum class KernelKind { rbf, quantum };

struct KernelMatrix {
    Eigen::MatrixXd values;
    KernelKind kind = KernelKind::rbf;

    bool is_square() const { return values.rows() == values.cols(); }
};

// gamma = 1 / (d * var), var pooled over every entry of the training
// feature matrix (population variance).
double rbf_gamma_scale(const FeatureMatrix& train);

// K(i, j) = exp(-gamma * |x_i - y_j|^2)
KernelMatrix rbf_gram(const FeatureMatrix& x, const FeatureMatrix& y, double gamma);

// Diagonal phase the one-repetition ZZ feature map accumulates on basis
// state z for angles x:
//   theta_z(x) = sum_i 2 x_i bit_i(z)
//              + sum_{i<j} 2 (pi - x_i)(pi - x_j) (bit_i(z) xor bit_j(z))
// The circuit behind it: a Hadamard layer, a phase rotation by 2 x_i on
// each qubit, then CX(i,j) . P_j(2 (pi-x_i)(pi-x_j)) . CX(i,j) for every
// pair i < j.
double zz_phase(std::span<const double> x, std::uint64_t z);

// Squared state fidelity of the encoded samples,
//   K(i, j) = | 2^-d sum_z exp(i (theta_z(y_j) - theta_z(x_i))) |^2,
// computed from cached per-sample phase tables. Expects features already
// rescaled into [0, pi]. d > 12 is rejected (the benchmark needs d <= 8).
KernelMatrix fidelity_kernel(const FeatureMatrix& x, const FeatureMatrix& y);

inline constexpr int kMaxFidelityQubits = 12;

}  // namespace rqk
