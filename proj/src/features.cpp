#include "rqk/features.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqk {

namespace {
constexpr double kScaleFloor = 1e-12;
}

FeatureMatrix flatten_products(const std::vector<RadarProduct>& products) {
    if (products.empty()) throw std::invalid_argument("flatten_products: empty product list");
    const auto& first = products.front();
    const Eigen::Index dim = static_cast<Eigen::Index>(first.values.size());
    FeatureMatrix out;
    out.values.resize(static_cast<Eigen::Index>(products.size()), dim);
    out.labels.reserve(products.size());
    for (std::size_t i = 0; i < products.size(); ++i) {
        const RadarProduct& p = products[i];
        if (static_cast<Eigen::Index>(p.values.size()) != dim)
            throw std::invalid_argument("flatten_products: inconsistent product shapes");
        for (Eigen::Index j = 0; j < dim; ++j)
            out.values(static_cast<Eigen::Index>(i), j) = p.values[static_cast<std::size_t>(j)];
        out.labels.push_back(p.label);
    }
    return out;
}

Standardizer fit_standardizer(const FeatureMatrix& train) {
    if (train.rows() == 0) throw std::invalid_argument("fit_standardizer: empty training set");
    Standardizer s;
    s.mean = train.values.colwise().mean().transpose();
    Eigen::VectorXd var(train.cols());
    for (Eigen::Index j = 0; j < train.cols(); ++j)
        var(j) = (train.values.col(j).array() - s.mean(j)).square().mean();
    s.scale = var.array().sqrt().max(kScaleFloor).matrix();
    return s;
}

FeatureMatrix apply_standardizer(const Standardizer& s, const FeatureMatrix& x) {
    if (x.cols() != s.mean.size())
        throw std::invalid_argument("apply_standardizer: feature dimension mismatch");
    FeatureMatrix out;
    out.values = x.values.rowwise() - s.mean.transpose();
    out.values.array().rowwise() /= s.scale.transpose().array();
    out.labels = x.labels;
    return out;
}

PcaModel PcaModel::truncated(int d) const {
    if (d < 1 || d > dimension())
        throw std::invalid_argument("PcaModel::truncated: d out of range");
    PcaModel out;
    out.components = components.topRows(d);
    out.center = center;
    out.explained_variance = explained_variance.head(d);
    return out;
}

// Exact dense route: eigendecomposition of the n x n Gram of the centred
// training matrix, then right singular vectors v_i = Xc^T u_i / s_i. A
// modified Gram-Schmidt pass pins orthonormality to machine precision.
PcaModel fit_pca(const FeatureMatrix& train, int d) {
    const Eigen::Index n = train.rows();
    const Eigen::Index dim = train.cols();
    if (n < 2) throw std::invalid_argument("fit_pca: need at least two training rows");
    if (d < 1 || d > std::min<Eigen::Index>(n - 1, dim))
        throw std::invalid_argument("fit_pca: d must satisfy 1 <= d <= min(rows-1, cols)");

    PcaModel model;
    model.center = train.values.colwise().mean().transpose();
    Eigen::MatrixXd centered = train.values.rowwise() - model.center.transpose();

    Eigen::MatrixXd gram = centered * centered.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("fit_pca: eigendecomposition failed");
    // ascending eigenvalues; take the top d from the back
    const Eigen::VectorXd& eigvals = solver.eigenvalues();
    const Eigen::MatrixXd& eigvecs = solver.eigenvectors();

    model.components.resize(d, dim);
    model.explained_variance.resize(d);
    const double scale_ref = std::max(eigvals(n - 1), 0.0);
    for (int i = 0; i < d; ++i) {
        const Eigen::Index col = n - 1 - i;
        double ev = eigvals(col);
        if (ev <= scale_ref * 1e-12 || ev <= 0.0)
            throw std::runtime_error("fit_pca: training matrix rank is below d");
        model.components.row(i) = (centered.transpose() * eigvecs.col(col)).transpose() /
                                  std::sqrt(ev);
        model.explained_variance(i) = ev / static_cast<double>(n);
    }

    // modified Gram-Schmidt + deterministic sign convention
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < i; ++j)
            model.components.row(i) -=
                model.components.row(i).dot(model.components.row(j)) * model.components.row(j);
        model.components.row(i) /= model.components.row(i).norm();
        Eigen::Index argmax = 0;
        model.components.row(i).cwiseAbs().maxCoeff(&argmax);
        if (model.components(i, argmax) < 0.0) model.components.row(i) = -model.components.row(i);
    }
    return model;
}

FeatureMatrix project(const PcaModel& p, const FeatureMatrix& x) {
    if (x.cols() != p.center.size())
        throw std::invalid_argument("project: feature dimension mismatch");
    FeatureMatrix out;
    out.values = (x.values.rowwise() - p.center.transpose()) * p.components.transpose();
    out.labels = x.labels;
    return out;
}

AngularScaler fit_angular(const FeatureMatrix& train) {
    if (train.rows() == 0) throw std::invalid_argument("fit_angular: empty training set");
    AngularScaler a;
    a.min = train.values.colwise().minCoeff().transpose();
    a.max = train.values.colwise().maxCoeff().transpose();
    return a;
}

FeatureMatrix apply_angular(const AngularScaler& a, const FeatureMatrix& x) {
    if (x.cols() != a.min.size())
        throw std::invalid_argument("apply_angular: feature dimension mismatch");
    FeatureMatrix out;
    out.values.resize(x.rows(), x.cols());
    out.labels = x.labels;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double span = a.max(j) - a.min(j);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            double v = span > 0.0 ? (x.values(i, j) - a.min(j)) / span * std::numbers::pi : 0.0;
            out.values(i, j) = std::clamp(v, 0.0, std::numbers::pi);
        }
    }
    return out;
}

}  // namespace rqk
