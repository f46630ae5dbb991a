#include "rqk/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqk {

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(t) *
                                 static_cast<double>(k) / static_cast<double>(n);
            acc += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

namespace {

// projection of v onto {0 <= a <= C, y'a = 0}: a_i = clip(v_i - nu y_i),
// with nu found by bisection (the constraint residual is monotone in nu)
Eigen::VectorXd project_feasible(const Eigen::VectorXd& v, const std::vector<double>& y,
                                 double C) {
    const Eigen::Index n = v.size();
    auto residual = [&](double nu) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = std::clamp(v(i) - nu * y[static_cast<std::size_t>(i)], 0.0, C);
            acc += y[static_cast<std::size_t>(i)] * a;
        }
        return acc;
    };
    double lo = -1.0, hi = 1.0;
    const double span = v.cwiseAbs().maxCoeff() + C + 1.0;
    lo = -span;
    hi = span;
    // residual is non-increasing in nu; bracket then bisect
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    const double nu = 0.5 * (lo + hi);
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i)
        out(i) = std::clamp(v(i) - nu * y[static_cast<std::size_t>(i)], 0.0, C);
    return out;
}

}  // namespace

QpSolution qp_reference_solve(const BinaryProblem& problem, int max_iterations) {
    const Eigen::Index n = problem.gram.rows();
    if (n == 0 || problem.gram.cols() != n)
        throw std::invalid_argument("qp_reference_solve: gram must be square");
    if (static_cast<Eigen::Index>(problem.y.size()) != n)
        throw std::invalid_argument("qp_reference_solve: label count mismatch");

    Eigen::MatrixXd Q(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            Q(i, j) = problem.y[static_cast<std::size_t>(i)] *
                      problem.y[static_cast<std::size_t>(j)] * problem.gram(i, j);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(Q);
    const double lipschitz = std::max(eigs.eigenvalues().cwiseAbs().maxCoeff(), 1e-12);
    const double step = 1.0 / lipschitz;

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    alpha = project_feasible(alpha, problem.y, problem.C);

    auto objective = [&](const Eigen::VectorXd& a) {
        return a.sum() - 0.5 * a.dot(Q * a);
    };

    double best = objective(alpha);
    int stall = 0;
    for (int it = 0; it < max_iterations; ++it) {
        const Eigen::VectorXd grad = Q * alpha - Eigen::VectorXd::Ones(n);
        alpha = project_feasible(alpha - step * grad, problem.y, problem.C);
        const double obj = objective(alpha);
        if (obj - best <= 1e-15 * std::max(1.0, std::abs(best))) {
            if (++stall >= 64) break;
        } else {
            stall = 0;
        }
        best = std::max(best, obj);
    }

    QpSolution sol;
    sol.alpha.assign(alpha.data(), alpha.data() + n);
    sol.objective = objective(alpha);
    return sol;
}

}  // namespace rqk
