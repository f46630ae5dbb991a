#pragma once

#include <Eigen/Core>
#include <span>
#include <stdexcept>
#include <vector>

#include "rqk/kernels.hpp"

namespace rqk {

// Two-class dual problem on a precomputed square kernel.
struct BinaryProblem {
    Eigen::MatrixXd gram;    // train x train kernel values
    std::vector<double> y;   // {-1, +1} per row
    double C = 1.0;
};

// Solution of the SVM dual: alpha_y[k] = alpha_k * y_k for the support rows
// only. support_indices index into the training set the model was given
// (remapped to global train ids by train_ovo).
struct SvmModel {
    std::vector<double> alpha_y;
    std::vector<int> support_indices;
    double bias = 0.0;
    KernelKind kind = KernelKind::rbf;
};

struct SmoConvergenceError : std::runtime_error {
    double worst_violation;
    explicit SmoConvergenceError(double violation)
        : std::runtime_error("SMO did not converge; worst KKT violation " +
                             std::to_string(violation)),
          worst_violation(violation) {}
};

// Maximises  sum alpha_i - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij  subject
// to 0 <= alpha <= C and sum alpha_i y_i = 0 by sequential minimal
// optimization, always updating the maximal-KKT-violating pair. On exit the
// largest violation is <= tol. The iteration budget is max_passes * n pair
// updates; exceeding it throws SmoConvergenceError.
SvmModel solve_smo(const BinaryProblem& problem, double tol = 1e-3, int max_passes = 1000);

// f(x) = sum_k alpha_y[k] * k_row[k] + bias, with k_row the kernel values
// between x and the support rows (same order as support_indices).
double decision_value(const SvmModel& model, std::span<const double> k_row);
int predict_binary(const SvmModel& model, std::span<const double> k_row);

// Dual objective at the model's coefficients (for solver verification).
double dual_objective(const BinaryProblem& problem, const SvmModel& model);
// Largest KKT violation over all training rows at the model's coefficients.
double max_kkt_violation(const BinaryProblem& problem, const SvmModel& model);

// One binary model per unordered class pair, majority vote.
struct PairwiseModel {
    int class_a = 0;  // the +1 side
    int class_b = 0;  // the -1 side
    SvmModel model;
};

struct MulticlassModel {
    std::vector<int> classes;  // ascending
    std::vector<PairwiseModel> pairwise;
};

// Trains k(k-1)/2 pairwise models on the sub-Grams of their class pairs.
MulticlassModel train_ovo(const KernelMatrix& gram, const std::vector<int>& labels, double C,
                          double tol = 1e-3, int max_passes = 1000);

// Majority vote over pairwise decisions; ties go to the tied class with the
// largest sum of |decision value| over its won pairs, then the lowest class
// id. k_rows holds kernel values of each test sample against every training
// row (test x train).
std::vector<int> predict_ovo(const MulticlassModel& model, const KernelMatrix& k_rows);

}  // namespace rqk
