#pragma once

#include <Eigen/Core>
#include <vector>

#include "rqk/products.hpp"

namespace rqk {

// Rows are samples, columns are features. Labels travel with the rows so
// that train/test subsets stay self-describing.
struct FeatureMatrix {
    Eigen::MatrixXd values;
    std::vector<int> labels;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

// Row-major flatten of 2D products into one feature matrix.
FeatureMatrix flatten_products(const std::vector<RadarProduct>& products);

// Per-feature zero-mean / unit-variance transform fitted on training rows
// only (population variance). Scales are floored at 1e-12 so constant
// columns map to zero instead of blowing up.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;
};

Standardizer fit_standardizer(const FeatureMatrix& train);
FeatureMatrix apply_standardizer(const Standardizer& s, const FeatureMatrix& x);

// Principal component basis of the centred training matrix: the top-d right
// singular vectors, orthonormal, ordered by descending variance, with the
// largest-magnitude coordinate of each component made positive.
struct PcaModel {
    Eigen::MatrixXd components;         // d x D, rows orthonormal
    Eigen::VectorXd center;             // D
    Eigen::VectorXd explained_variance; // d, descending

    int dimension() const { return static_cast<int>(components.rows()); }
    // Same model restricted to its leading d components. Identical to
    // fitting with the smaller d directly (principal subspaces nest).
    PcaModel truncated(int d) const;
};

PcaModel fit_pca(const FeatureMatrix& train, int d);
FeatureMatrix project(const PcaModel& p, const FeatureMatrix& x);

// Per-feature min-max map onto [0, pi], fitted on training features.
// Out-of-range values at apply time are clipped into [0, pi]; zero-span
// features map to 0.
struct AngularScaler {
    Eigen::VectorXd min;
    Eigen::VectorXd max;
};

AngularScaler fit_angular(const FeatureMatrix& train);
FeatureMatrix apply_angular(const AngularScaler& a, const FeatureMatrix& x);

}  // namespace rqk
