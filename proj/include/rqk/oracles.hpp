#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "rqk/svm.hpp"

namespace rqk {

// Independent reference implementations used to cross-check the production
// paths. Nothing here shares code with the implementations it verifies:
// the DFT is the quadratic-time definition and the QP solver is projected
// gradient. Shipped (rather than test-only) so the self-test command can
// show the same evidence to users.

// X[k] = sum_n x[n] exp(-2 pi i n k / N), O(N^2)
std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x);

struct QpSolution {
    std::vector<double> alpha;
    double objective = 0.0;  // dual objective, sum(alpha) - 1/2 a'Qa
};

// Maximises the SVM dual by projected gradient with an exact projection
// onto {0 <= a <= C, y'a = 0} (bisection on the equality multiplier).
// Intended for small problems (n <= 50 or so).
QpSolution qp_reference_solve(const BinaryProblem& problem, int max_iterations = 400000);

}  // namespace rqk
