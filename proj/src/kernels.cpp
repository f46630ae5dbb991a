#include "rqk/kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rqk {

double rbf_gamma_scale(const FeatureMatrix& train) {
    if (train.rows() == 0 || train.cols() == 0)
        throw std::invalid_argument("rbf_gamma_scale: empty training set");
    const double mean = train.values.mean();
    const double var = (train.values.array() - mean).square().mean();
    if (var <= 0.0)
        throw std::invalid_argument("rbf_gamma_scale: pooled variance of training features is zero");
    return 1.0 / (static_cast<double>(train.cols()) * var);
}

KernelMatrix rbf_gram(const FeatureMatrix& x, const FeatureMatrix& y, double gamma) {
    if (x.cols() != y.cols())
        throw std::invalid_argument("rbf_gram: feature dimension mismatch");
    KernelMatrix k;
    k.kind = KernelKind::rbf;
    k.values.resize(x.rows(), y.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < y.rows(); ++j)
            k.values(i, j) =
                std::exp(-gamma * (x.values.row(i) - y.values.row(j)).squaredNorm());
    return k;
}

double zz_phase(std::span<const double> x, std::uint64_t z) {
    const std::size_t d = x.size();
    if (d == 0) throw std::invalid_argument("zz_phase: need at least one angle");
    double theta = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const bool bi = (z >> i) & 1ULL;
        if (bi) theta += 2.0 * x[i];
        for (std::size_t j = i + 1; j < d; ++j) {
            const bool bj = (z >> j) & 1ULL;
            if (bi != bj)
                theta += 2.0 * (std::numbers::pi - x[i]) * (std::numbers::pi - x[j]);
        }
    }
    return theta;
}

namespace {

// e^{i theta_z(x)} for all 2^d basis states of one sample
std::vector<std::complex<double>> phase_table(const Eigen::MatrixXd& rows, Eigen::Index r) {
    const std::size_t d = static_cast<std::size_t>(rows.cols());
    std::vector<double> angles(d);
    for (std::size_t i = 0; i < d; ++i) angles[i] = rows(r, static_cast<Eigen::Index>(i));
    const std::size_t size = std::size_t{1} << d;
    std::vector<std::complex<double>> table(size);
    for (std::size_t z = 0; z < size; ++z) {
        const double theta = zz_phase(angles, z);
        table[z] = {std::cos(theta), std::sin(theta)};
    }
    return table;
}

}  // namespace

KernelMatrix fidelity_kernel(const FeatureMatrix& x, const FeatureMatrix& y) {
    if (x.cols() != y.cols())
        throw std::invalid_argument("fidelity_kernel: feature dimension mismatch");
    const int d = static_cast<int>(x.cols());
    if (d < 1) throw std::invalid_argument("fidelity_kernel: need at least one feature");
    if (d > kMaxFidelityQubits)
        throw std::invalid_argument("fidelity_kernel: dimension exceeds the " +
                                    std::to_string(kMaxFidelityQubits) + "-qubit guardrail");

    std::vector<std::vector<std::complex<double>>> px(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) px[static_cast<std::size_t>(i)] = phase_table(x.values, i);
    std::vector<std::vector<std::complex<double>>> py(static_cast<std::size_t>(y.rows()));
    for (Eigen::Index j = 0; j < y.rows(); ++j) py[static_cast<std::size_t>(j)] = phase_table(y.values, j);

    const std::size_t size = std::size_t{1} << d;
    const double norm = 1.0 / static_cast<double>(size);

    KernelMatrix k;
    k.kind = KernelKind::quantum;
    k.values.resize(x.rows(), y.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const auto& pi = px[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < y.rows(); ++j) {
            const auto& pj = py[static_cast<std::size_t>(j)];
            std::complex<double> overlap(0.0, 0.0);
            for (std::size_t z = 0; z < size; ++z) overlap += std::conj(pi[z]) * pj[z];
            k.values(i, j) = std::norm(overlap * norm);
        }
    }
    return k;
}

}  // namespace rqk
