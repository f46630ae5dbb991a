#include "rqk/svm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace rqk {
namespace {

constexpr double kEtaFloor = 1e-12;

void validate_problem(const BinaryProblem& p) {
    const Eigen::Index n = p.gram.rows();
    if (n == 0 || p.gram.cols() != n)
        throw std::invalid_argument("BinaryProblem: gram must be square and non-empty");
    if (static_cast<Eigen::Index>(p.y.size()) != n)
        throw std::invalid_argument("BinaryProblem: label count must match gram size");
    if (!(p.C > 0.0)) throw std::invalid_argument("BinaryProblem: C must be positive");
    bool pos = false, neg = false;
    for (double v : p.y) {
        if (v == 1.0) pos = true;
        else if (v == -1.0) neg = true;
        else throw std::invalid_argument("BinaryProblem: labels must be -1 or +1");
    }
    if (!pos || !neg) throw std::invalid_argument("BinaryProblem: both classes must be present");
}

double objective_at(const BinaryProblem& p, const std::vector<double>& alpha) {
    const Eigen::Index n = p.gram.rows();
    double linear = 0.0, quad = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (alpha[static_cast<std::size_t>(i)] == 0.0) continue;
        linear += alpha[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            if (alpha[static_cast<std::size_t>(j)] == 0.0) continue;
            quad += alpha[static_cast<std::size_t>(i)] * alpha[static_cast<std::size_t>(j)] *
                    p.y[static_cast<std::size_t>(i)] * p.y[static_cast<std::size_t>(j)] *
                    p.gram(i, j);
        }
    }
    return linear - 0.5 * quad;
}

}  // namespace

SvmModel solve_smo(const BinaryProblem& problem, double tol, int max_passes) {
    validate_problem(problem);
    if (!(tol > 0.0)) throw std::invalid_argument("solve_smo: tol must be positive");
    const Eigen::Index n = problem.gram.rows();
    const double C = problem.C;
    const auto& K = problem.gram;
    const auto& y = problem.y;

    std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
    // gradient of 1/2 a'Qa - 1'a at a = 0
    std::vector<double> grad(static_cast<std::size_t>(n), -1.0);

    const long long budget = static_cast<long long>(max_passes) * n;
    double m_up = 0.0, m_low = 0.0;
#ifndef NDEBUG
    double prev_objective = 0.0;
#endif

    long long iter = 0;
    for (;; ++iter) {
        // maximal-violating pair
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        Eigen::Index i = -1, j = -1;
        for (Eigen::Index t = 0; t < n; ++t) {
            const double v = -y[static_cast<std::size_t>(t)] * grad[static_cast<std::size_t>(t)];
            const bool in_up = (y[static_cast<std::size_t>(t)] > 0.0)
                                   ? alpha[static_cast<std::size_t>(t)] < C
                                   : alpha[static_cast<std::size_t>(t)] > 0.0;
            const bool in_low = (y[static_cast<std::size_t>(t)] > 0.0)
                                    ? alpha[static_cast<std::size_t>(t)] > 0.0
                                    : alpha[static_cast<std::size_t>(t)] < C;
            if (in_up && v > m_up) {
                m_up = v;
                i = t;
            }
            if (in_low && v < m_low) {
                m_low = v;
                j = t;
            }
        }
        if (i < 0 || j < 0 || m_up - m_low <= tol) break;
        if (iter >= budget) throw SmoConvergenceError(m_up - m_low);

        const std::size_t si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
        double eta = K(i, i) + K(j, j) - 2.0 * K(i, j);
        if (eta < kEtaFloor) eta = kEtaFloor;

        double delta_i, delta_j;
        if (y[si] != y[sj]) {
            // alpha_i and alpha_j move together
            double delta = -(grad[si] + grad[sj]) / eta;
            delta = std::min(delta, std::min(C - alpha[si], C - alpha[sj]));
            delta = std::max(delta, std::max(-alpha[si], -alpha[sj]));
            delta_i = delta;
            delta_j = delta;
        } else {
            // alpha_i up, alpha_j down
            double delta = -(grad[si] - grad[sj]) / eta;
            delta = std::min(delta, std::min(C - alpha[si], alpha[sj]));
            delta = std::max(delta, std::max(-alpha[si], alpha[sj] - C));
            delta_i = delta;
            delta_j = -delta;
        }

        alpha[si] = std::clamp(alpha[si] + delta_i, 0.0, C);
        alpha[sj] = std::clamp(alpha[sj] + delta_j, 0.0, C);

        for (Eigen::Index t = 0; t < n; ++t) {
            const std::size_t st = static_cast<std::size_t>(t);
            grad[st] += y[st] * (y[si] * K(t, i) * delta_i + y[sj] * K(t, j) * delta_j);
        }

#ifndef NDEBUG
        const double obj = objective_at(problem, alpha);
        assert(obj >= prev_objective - 1e-9 * std::max(1.0, std::abs(prev_objective)));
        prev_objective = obj;
#endif
    }

    SvmModel model;
    model.bias = (m_up + m_low) / 2.0;
    if (!std::isfinite(m_up)) model.bias = m_low;
    if (!std::isfinite(m_low)) model.bias = m_up;
    double balance = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) {
        const std::size_t st = static_cast<std::size_t>(t);
        balance += alpha[st] * y[st];
        if (alpha[st] > 0.0) {
            model.alpha_y.push_back(alpha[st] * y[st]);
            model.support_indices.push_back(static_cast<int>(t));
        }
    }
    if (std::abs(balance) > 1e-8)
        throw std::logic_error("solve_smo: equality constraint drifted beyond 1e-8");
    return model;
}

double decision_value(const SvmModel& model, std::span<const double> k_row) {
    if (k_row.size() != model.alpha_y.size())
        throw std::invalid_argument("decision_value: kernel row is not aligned with the support set");
    double f = model.bias;
    for (std::size_t k = 0; k < k_row.size(); ++k) f += model.alpha_y[k] * k_row[k];
    return f;
}

int predict_binary(const SvmModel& model, std::span<const double> k_row) {
    return decision_value(model, k_row) > 0.0 ? 1 : -1;
}

double dual_objective(const BinaryProblem& problem, const SvmModel& model) {
    std::vector<double> alpha(problem.y.size(), 0.0);
    for (std::size_t k = 0; k < model.support_indices.size(); ++k) {
        const std::size_t t = static_cast<std::size_t>(model.support_indices[k]);
        alpha[t] = model.alpha_y[k] * problem.y[t];  // recover alpha = alpha_y * y
    }
    return objective_at(problem, alpha);
}

double max_kkt_violation(const BinaryProblem& problem, const SvmModel& model) {
    const Eigen::Index n = problem.gram.rows();
    std::vector<double> alpha(problem.y.size(), 0.0);
    for (std::size_t k = 0; k < model.support_indices.size(); ++k) {
        const std::size_t t = static_cast<std::size_t>(model.support_indices[k]);
        alpha[t] = model.alpha_y[k] * problem.y[t];
    }
    double worst = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) {
        const std::size_t st = static_cast<std::size_t>(t);
        double h = 0.0;
        for (std::size_t k = 0; k < model.support_indices.size(); ++k)
            h += model.alpha_y[k] * problem.gram(t, model.support_indices[k]);
        const double margin = problem.y[st] * (h + model.bias);
        double violation = 0.0;
        if (alpha[st] <= 0.0) violation = std::max(0.0, 1.0 - margin);
        else if (alpha[st] >= problem.C) violation = std::max(0.0, margin - 1.0);
        else violation = std::abs(margin - 1.0);
        worst = std::max(worst, violation);
    }
    return worst;
}

MulticlassModel train_ovo(const KernelMatrix& gram, const std::vector<int>& labels, double C,
                          double tol, int max_passes) {
    if (!gram.is_square()) throw std::invalid_argument("train_ovo: gram must be square");
    if (static_cast<Eigen::Index>(labels.size()) != gram.values.rows())
        throw std::invalid_argument("train_ovo: label count must match gram size");

    MulticlassModel model;
    {
        std::set<int> unique(labels.begin(), labels.end());
        model.classes.assign(unique.begin(), unique.end());
    }
    if (model.classes.size() < 2) throw std::invalid_argument("train_ovo: need at least 2 classes");

    for (std::size_t a = 0; a < model.classes.size(); ++a) {
        for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
            const int ca = model.classes[a], cb = model.classes[b];
            std::vector<int> rows;
            for (std::size_t t = 0; t < labels.size(); ++t)
                if (labels[t] == ca || labels[t] == cb) rows.push_back(static_cast<int>(t));

            BinaryProblem sub;
            sub.C = C;
            sub.y.reserve(rows.size());
            for (int r : rows) sub.y.push_back(labels[static_cast<std::size_t>(r)] == ca ? 1.0 : -1.0);
            sub.gram.resize(static_cast<Eigen::Index>(rows.size()),
                            static_cast<Eigen::Index>(rows.size()));
            for (std::size_t p = 0; p < rows.size(); ++p)
                for (std::size_t q = 0; q < rows.size(); ++q)
                    sub.gram(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
                        gram.values(rows[p], rows[q]);

            PairwiseModel pair;
            pair.class_a = ca;
            pair.class_b = cb;
            pair.model = solve_smo(sub, tol, max_passes);
            pair.model.kind = gram.kind;
            for (int& s : pair.model.support_indices) s = rows[static_cast<std::size_t>(s)];
            model.pairwise.push_back(std::move(pair));
        }
    }
    return model;
}

std::vector<int> predict_ovo(const MulticlassModel& model, const KernelMatrix& k_rows) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k_rows.values.rows()));
    std::vector<double> support_row;
    for (Eigen::Index r = 0; r < k_rows.values.rows(); ++r) {
        std::map<int, int> votes;
        std::map<int, double> scores;
        for (const PairwiseModel& pair : model.pairwise) {
            support_row.clear();
            for (int s : pair.model.support_indices) {
                if (s < 0 || s >= k_rows.values.cols())
                    throw std::invalid_argument("predict_ovo: kernel rows do not cover the training set");
                support_row.push_back(k_rows.values(r, s));
            }
            const double f = decision_value(pair.model, support_row);
            const int winner = f > 0.0 ? pair.class_a : pair.class_b;
            votes[winner] += 1;
            scores[winner] += std::abs(f);
        }
        int best = model.classes.front();
        int best_votes = -1;
        double best_score = 0.0;
        for (int c : model.classes) {
            const int v = votes.count(c) ? votes[c] : 0;
            const double s = scores.count(c) ? scores[c] : 0.0;
            if (v > best_votes || (v == best_votes && s > best_score)) {
                best = c;
                best_votes = v;
                best_score = s;
            }
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace rqk
