#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "json.hpp"

namespace coman::learn {

/// Classification tree grown with Gini splitting to purity or min-leaf.
struct DecisionTree {
    struct Node {
        int feature = -1;       // -1: leaf
        double threshold = 0.0;
        int left = -1, right = -1;
        int label = 0;          // majority class (leaves)
    };
    std::vector<Node> nodes;

    int predict(const Eigen::VectorXd& x) const;

    nlohmann::json to_json() const;
    static DecisionTree from_json(const nlohmann::json& j);
};

struct TreeParams {
    int min_leaf = 1;
    int mtry = 0;            // features per split; 0 = all
    std::uint64_t seed = 1;  // feature-subset stream
};

DecisionTree fit_tree(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, int n_classes,
                      const TreeParams& params);

struct ForestParams {
    int n_trees = 100;
    double bootstrap_fraction = 1.0;  // <= 0 disables bootstrapping
    int min_leaf = 5;
    int mtry = 0;  // 0 = floor(sqrt(d))
    std::uint64_t seed = 1;
};

struct ForestModel {
    std::vector<DecisionTree> trees;
    int n_classes = 0;
    double oob_error = -1.0;  // -1 when bootstrapping is off

    /// Majority vote; ties broken by the lowest class index.
    int predict(const Eigen::VectorXd& x) const;

    nlohmann::json to_json() const;
    static ForestModel from_json(const nlohmann::json& j);
};

/// Trees are grown in parallel with per-tree derived seeds, so the result
/// is independent of thread scheduling.
ForestModel train_random_forest(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, int n_classes,
                                const ForestParams& params);

}  // namespace coman::learn
