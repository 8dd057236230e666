#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coman/core/rng.hpp"
#include "coman/learn/forest.hpp"

namespace coman::learn {

int DecisionTree::predict(const Eigen::VectorXd& x) const {
    int idx = 0;
    while (nodes[static_cast<std::size_t>(idx)].feature >= 0) {
        const Node& nd = nodes[static_cast<std::size_t>(idx)];
        idx = x(nd.feature) <= nd.threshold ? nd.left : nd.right;
    }
    return nodes[static_cast<std::size_t>(idx)].label;
}

nlohmann::json DecisionTree::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& nd : nodes) {
        arr.push_back({{"f", nd.feature}, {"t", nd.threshold}, {"l", nd.left}, {"r", nd.right}, {"c", nd.label}});
    }
    return arr;
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
    DecisionTree tree;
    for (const auto& nj : j) {
        Node nd;
        nd.feature = nj.at("f").get<int>();
        nd.threshold = nj.at("t").get<double>();
        nd.left = nj.at("l").get<int>();
        nd.right = nj.at("r").get<int>();
        nd.label = nj.at("c").get<int>();
        tree.nodes.push_back(nd);
    }
    return tree;
}

namespace {

struct TreeBuilder {
    const Eigen::MatrixXd& x;
    const Eigen::VectorXi& y;
    int n_classes;
    TreeParams params;
    Rng rng;
    DecisionTree tree;
    std::vector<int> feature_pool;

    TreeBuilder(const Eigen::MatrixXd& x_, const Eigen::VectorXi& y_, int n_classes_, const TreeParams& p)
        : x(x_), y(y_), n_classes(n_classes_), params(p), rng(p.seed) {
        feature_pool.resize(static_cast<std::size_t>(x.cols()));
        std::iota(feature_pool.begin(), feature_pool.end(), 0);
    }

    int majority(const std::vector<Eigen::Index>& idx) const {
        std::vector<int> counts(static_cast<std::size_t>(n_classes), 0);
        for (auto i : idx) counts[static_cast<std::size_t>(y(i))]++;
        int best = 0;
        for (int c = 1; c < n_classes; ++c) {
            if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) best = c;
        }
        return best;
    }

    bool pure(const std::vector<Eigen::Index>& idx) const {
        for (std::size_t i = 1; i < idx.size(); ++i) {
            if (y(idx[i]) != y(idx[0])) return false;
        }
        return true;
    }

    int build(std::vector<Eigen::Index>& idx) {
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes[static_cast<std::size_t>(node_id)].label = majority(idx);

        if (static_cast<int>(idx.size()) < 2 * params.min_leaf || pure(idx)) return node_id;

        // Feature subset: partial Fisher-Yates over the pool.
        const int d = static_cast<int>(x.cols());
        const int mtry = params.mtry > 0 ? std::min(params.mtry, d) : d;
        for (int i = 0; i < mtry; ++i) {
            const auto j = i + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d - i)));
            std::swap(feature_pool[static_cast<std::size_t>(i)], feature_pool[static_cast<std::size_t>(j)]);
        }

        const double n_total = static_cast<double>(idx.size());
        std::vector<int> total_counts(static_cast<std::size_t>(n_classes), 0);
        for (auto i : idx) total_counts[static_cast<std::size_t>(y(i))]++;

        double best_score = std::numeric_limits<double>::infinity();
        int best_feature = -1;
        double best_threshold = 0.0;

        std::vector<Eigen::Index> order;
        std::vector<int> left_counts(static_cast<std::size_t>(n_classes));
        for (int fi = 0; fi < mtry; ++fi) {
            const int f = feature_pool[static_cast<std::size_t>(fi)];
            order = idx;
            std::sort(order.begin(), order.end(),
                      [&](Eigen::Index a, Eigen::Index b) { return x(a, f) < x(b, f); });
            std::fill(left_counts.begin(), left_counts.end(), 0);
            for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
                left_counts[static_cast<std::size_t>(y(order[pos]))]++;
                const double v = x(order[pos], f);
                const double v_next = x(order[pos + 1], f);
                if (v_next <= v) continue;
                const auto n_left = static_cast<double>(pos + 1);
                const double n_right = n_total - n_left;
                if (n_left < params.min_leaf || n_right < params.min_leaf) continue;
                double gini_left = 1.0, gini_right = 1.0;
                for (int c = 0; c < n_classes; ++c) {
                    const double pl = left_counts[static_cast<std::size_t>(c)] / n_left;
                    const double pr = (total_counts[static_cast<std::size_t>(c)] -
                                       left_counts[static_cast<std::size_t>(c)]) / n_right;
                    gini_left -= pl * pl;
                    gini_right -= pr * pr;
                }
                const double score = (n_left * gini_left + n_right * gini_right) / n_total;
                if (score < best_score - 1e-15) {
                    best_score = score;
                    best_feature = f;
                    best_threshold = 0.5 * (v + v_next);
                }
            }
        }

        if (best_feature < 0) return node_id;  // no valid split

        std::vector<Eigen::Index> left, right;
        for (auto i : idx) (x(i, best_feature) <= best_threshold ? left : right).push_back(i);
        idx.clear();
        idx.shrink_to_fit();

        const int left_id = build(left);
        const int right_id = build(right);
        DecisionTree::Node& nd = tree.nodes[static_cast<std::size_t>(node_id)];
        nd.feature = best_feature;
        nd.threshold = best_threshold;
        nd.left = left_id;
        nd.right = right_id;
        return node_id;
    }
};

}  // namespace

DecisionTree fit_tree(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, int n_classes,
                      const TreeParams& params) {
    TreeBuilder builder(x, y, n_classes, params);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(x.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    builder.build(idx);
    return std::move(builder.tree);
}

}  // namespace coman::learn
