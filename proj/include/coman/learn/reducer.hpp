#pragma once

#include <Eigen/Dense>

#include "coman/learn/data.hpp"

namespace coman::learn {

enum class ReducerKind { None, Pca, Lda };

const char* to_string(ReducerKind k);
ReducerKind reducer_kind_from_string(const std::string& s);

/// Linear dimensionality reduction: y = P (x - mean). PCA rows are the
/// top-d orthonormal eigenvectors of the covariance; LDA rows maximize the
/// between/within scatter ratio (generalized eigenproblem, ridge on the
/// within scatter), d <= C-1.
struct Reducer {
    ReducerKind kind = ReducerKind::None;
    Eigen::VectorXd mean;
    Eigen::MatrixXd projection;  // d x n_features

    int out_dim(int in_dim) const {
        return kind == ReducerKind::None ? in_dim : static_cast<int>(projection.rows());
    }
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
        if (kind == ReducerKind::None) return x;
        return projection * (x - mean);
    }
    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

Reducer fit_pca(const Eigen::MatrixXd& x, int d);
Reducer fit_lda(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, int n_classes, int d);

}  // namespace coman::learn
