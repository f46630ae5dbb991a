#include <doctest.h>

#include <cmath>

#include "rqk/oracles.hpp"
#include "rqk/rng.hpp"
#include "rqk/svm.hpp"

using namespace rqk;

namespace {

FeatureMatrix points(std::initializer_list<std::initializer_list<double>> rows) {
    FeatureMatrix f;
    const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index c = static_cast<Eigen::Index>(rows.begin()->size());
    f.values.resize(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double v : row) f.values(i, j++) = v;
        ++i;
    }
    f.labels.assign(static_cast<std::size_t>(r), 0);
    return f;
}

BinaryProblem random_problem(std::uint64_t seed) {
    Rng rng(seed);
    const int n = 6 + rng.pick(15);
    const int d = 1 + rng.pick(4);
    FeatureMatrix f;
    f.values.resize(n, d);
    BinaryProblem p;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) f.values(i, j) = rng.uniform(-2.0, 2.0);
        p.y.push_back(i % 2 == 0 ? 1.0 : -1.0);
    }
    f.labels.assign(static_cast<std::size_t>(n), 0);
    p.gram = rbf_gram(f, f, rng.uniform(0.3, 1.5)).values;
    p.C = (seed % 3 == 0) ? 10.0 : 1.0;
    return p;
}

}  // namespace

TEST_CASE("two-point problem solved by hand") {
    // x1 = -1, x2 = +1 with a linear kernel K = x x'
    BinaryProblem p;
    p.gram.resize(2, 2);
    p.gram << 1.0, -1.0, -1.0, 1.0;
    p.y = {-1.0, 1.0};
    p.C = 100.0;

    const SvmModel model = solve_smo(p, 1e-8, 1000);
    REQUIRE(model.support_indices.size() == 2);
    // hand solution of the 2-variable dual: alpha = (1/2, 1/2), boundary at 0
    CHECK(model.alpha_y[0] == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(model.alpha_y[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(model.bias == doctest::Approx(0.0).epsilon(1e-8));

    // midpoint (x = 0) has kernel row (0, 0) against both support vectors
    const double k_mid[2] = {0.0, 0.0};
    CHECK(std::abs(decision_value(model, k_mid)) < 1e-9);

    // the free support vectors sit on the margin
    const double k_x2[2] = {-1.0, 1.0};
    CHECK(std::abs(decision_value(model, k_x2)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("contradictory labels on identical points saturate at C") {
    BinaryProblem p;
    p.gram = Eigen::MatrixXd::Ones(2, 2);
    p.y = {1.0, -1.0};
    p.C = 1.0;
    const SvmModel model = solve_smo(p, 1e-6, 1000);
    REQUIRE(model.support_indices.size() == 2);
    CHECK(std::abs(model.alpha_y[0]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(model.alpha_y[1]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("XOR layout with an RBF kernel") {
    const FeatureMatrix f =
        points({{0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}});
    BinaryProblem p;
    p.gram = rbf_gram(f, f, 1.0).values;
    p.y = {1.0, 1.0, -1.0, -1.0};
    p.C = 10.0;
    const SvmModel model = solve_smo(p, 1e-8, 2000);

    // 100% training accuracy
    for (int i = 0; i < 4; ++i) {
        std::vector<double> row;
        for (int s : model.support_indices) row.push_back(p.gram(i, s));
        CHECK(predict_binary(model, row) == (p.y[static_cast<std::size_t>(i)] > 0 ? 1 : -1));
    }

    // dual objective matches the projected-gradient oracle
    const double smo_obj = dual_objective(p, model);
    const double ref_obj = qp_reference_solve(p).objective;
    CHECK(std::abs(smo_obj - ref_obj) <= 1e-6 * std::max(1.0, std::abs(ref_obj)));
}

TEST_CASE("oracle equivalence and KKT on random problems") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const BinaryProblem p = random_problem(seed);
        const SvmModel model = solve_smo(p, 1e-8, 20000);

        CHECK(max_kkt_violation(p, model) < 1e-6);
        // dual feasibility
        double balance = 0.0;
        for (std::size_t k = 0; k < model.alpha_y.size(); ++k) {
            const double alpha = std::abs(model.alpha_y[k]);
            CHECK(alpha > 0.0);
            CHECK(alpha <= p.C + 1e-12);
            balance += model.alpha_y[k];
        }
        CHECK(std::abs(balance) < 1e-8);

        const double ref = qp_reference_solve(p).objective;
        CHECK(std::abs(dual_objective(p, model) - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("flipping labels flips every decision value") {
    BinaryProblem p = random_problem(21);
    const SvmModel model = solve_smo(p, 1e-8, 20000);
    BinaryProblem flipped = p;
    for (double& v : flipped.y) v = -v;
    const SvmModel mirrored = solve_smo(flipped, 1e-8, 20000);

    for (Eigen::Index i = 0; i < p.gram.rows(); ++i) {
        std::vector<double> row_a, row_b;
        for (int s : model.support_indices) row_a.push_back(p.gram(i, s));
        for (int s : mirrored.support_indices) row_b.push_back(p.gram(i, s));
        CHECK(decision_value(model, row_a) ==
              doctest::Approx(-decision_value(mirrored, row_b)).epsilon(1e-6));
    }
}

TEST_CASE("non-convergence raises with the violation attached") {
    BinaryProblem p = random_problem(4);
    CHECK_THROWS_AS(solve_smo(p, 1e-12, 0), SmoConvergenceError);
}

TEST_CASE("one-vs-one: reduction, pair count, separation") {
    Rng rng(31);
    // three well-separated clouds in 2D
    FeatureMatrix f;
    const int per = 10;
    f.values.resize(3 * per, 2);
    std::vector<int> labels;
    const double centers[3][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < per; ++k) {
            f.values(c * per + k, 0) = centers[c][0] + rng.uniform(-0.5, 0.5);
            f.values(c * per + k, 1) = centers[c][1] + rng.uniform(-0.5, 0.5);
            labels.push_back(c);
        }
    f.labels = labels;

    const KernelMatrix gram = rbf_gram(f, f, 0.5);
    const MulticlassModel model = train_ovo(gram, labels, 1.0);
    CHECK(model.pairwise.size() == 3);  // k(k-1)/2

    const std::vector<int> predicted = predict_ovo(model, gram);
    for (std::size_t i = 0; i < labels.size(); ++i) CHECK(predicted[i] == labels[i]);

    // two-class reduction matches the binary model
    std::vector<int> two_labels(labels.begin(), labels.begin() + 2 * per);
    FeatureMatrix f2;
    f2.values = f.values.topRows(2 * per);
    f2.labels = two_labels;
    const KernelMatrix gram2 = rbf_gram(f2, f2, 0.5);
    const MulticlassModel ovo2 = train_ovo(gram2, two_labels, 1.0);
    REQUIRE(ovo2.pairwise.size() == 1);
    const std::vector<int> from_ovo = predict_ovo(ovo2, gram2);

    BinaryProblem direct;
    direct.gram = gram2.values;
    for (int lab : two_labels) direct.y.push_back(lab == 0 ? 1.0 : -1.0);
    direct.C = 1.0;
    const SvmModel binary = solve_smo(direct);
    for (Eigen::Index i = 0; i < gram2.values.rows(); ++i) {
        std::vector<double> row;
        for (int s : binary.support_indices) row.push_back(gram2.values(i, s));
        const int as_class = predict_binary(binary, row) == 1 ? 0 : 1;
        CHECK(from_ovo[static_cast<std::size_t>(i)] == as_class);
    }

    // class with too few rows
    std::vector<int> degenerate = labels;
    for (int& v : degenerate) v = 0;
    CHECK_THROWS_AS(train_ovo(gram, degenerate, 1.0), std::invalid_argument);
}

TEST_CASE("prediction depends only on Gram values") {
    // negating every feature leaves the RBF Gram bit-identical
    Rng rng(77);
    FeatureMatrix f;
    f.values.resize(14, 2);
    std::vector<int> labels;
    for (int i = 0; i < 14; ++i) {
        f.values(i, 0) = rng.uniform(-2.0, 2.0);
        f.values(i, 1) = rng.uniform(-2.0, 2.0);
        labels.push_back(i % 2);
    }
    f.labels = labels;
    FeatureMatrix g;
    g.values = -f.values;
    g.labels = labels;

    const KernelMatrix k1 = rbf_gram(f, f, 0.9);
    const KernelMatrix k2 = rbf_gram(g, g, 0.9);
    REQUIRE((k1.values - k2.values).cwiseAbs().maxCoeff() == 0.0);

    const MulticlassModel m1 = train_ovo(k1, labels, 1.0);
    const MulticlassModel m2 = train_ovo(k2, labels, 1.0);
    REQUIRE(m1.pairwise.size() == m2.pairwise.size());
    for (std::size_t p = 0; p < m1.pairwise.size(); ++p) {
        CHECK(m1.pairwise[p].model.support_indices == m2.pairwise[p].model.support_indices);
        CHECK(m1.pairwise[p].model.bias == m2.pairwise[p].model.bias);
    }
}
