#pragma once

#include <Eigen/Dense>
#include <vector>

#include "json.hpp"

namespace coman::learn {

/// Depth-1 decision stump with hard-label leaves; the weak learner of the
/// pseudo-loss booster. h(x, y) is 1 when the routed leaf predicts y.
struct Stump {
    int feature = -1;       // -1: degenerate single-leaf stump
    double threshold = 0.0;
    int left_class = 0;     // feature value <= threshold
    int right_class = 0;

    int predict(const Eigen::VectorXd& x) const {
        if (feature < 0) return left_class;
        return x(feature) <= threshold ? left_class : right_class;
    }

    nlohmann::json to_json() const;
    static Stump from_json(const nlohmann::json& j);
};

/// Fit a stump minimizing the pseudo-loss cost: for sample i predicted as
/// class c, cost is 0 when c equals the label and W_i + D(i, c) otherwise,
/// where W_i is the total mislabel mass of sample i.
Stump fit_stump_pseudo_loss(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                            const Eigen::MatrixXd& mislabel /* n x C, label column zero */);

/// Multiclass boosting over (sample, wrong-label) pairs. Training stops
/// early when the weak learner is no better than chance (pseudo-loss
/// >= 1/2) or perfect.
struct AdaBoostModel {
    std::vector<Stump> stumps;
    std::vector<double> weights;      // ln(1/beta_t)
    std::vector<double> pseudo_losses;  // per round, for diagnostics
    int n_classes = 0;

    int predict(const Eigen::VectorXd& x) const;

    /// Error bound (C-1) * prod_t 2 sqrt(eps_t (1 - eps_t)); nonincreasing
    /// while every round beats chance.
    std::vector<double> bound_sequence() const;

    nlohmann::json to_json() const;
    static AdaBoostModel from_json(const nlohmann::json& j);
};

AdaBoostModel train_adaboost(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, int n_classes,
                             int rounds);

}  // namespace coman::learn
