#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "coman/dataset/corpus.hpp"

namespace coman::learn {

/// Dense training view: one row per window.
struct Dataset {
    Eigen::MatrixXd x;                     // n x d
    Eigen::VectorXi y;                     // labels 0..n_classes-1
    std::vector<std::int64_t> trial_ids;   // per-row provenance for fold grouping
    int n_classes = 0;

    Eigen::Index n_rows() const { return x.rows(); }
    Eigen::Index n_features() const { return x.cols(); }

    static Dataset from_windows(const std::vector<dataset::LabeledWindow>& windows, int n_classes);
};

/// Per-feature zero-mean unit-variance transform fitted on training data.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;  // stds clamped away from zero

    static Standardizer fit(const Eigen::MatrixXd& x);
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return (x - mean).cwiseQuotient(scale); }
    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

}  // namespace coman::learn
