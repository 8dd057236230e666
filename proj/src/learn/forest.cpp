#include <stdexcept>

#include "coman/core/parallel.hpp"
#include "coman/core/rng.hpp"
#include "coman/learn/forest.hpp"

namespace coman::learn {

int ForestModel::predict(const Eigen::VectorXd& x) const {
    std::vector<int> votes(static_cast<std::size_t>(n_classes), 0);
    for (const auto& t : trees) votes[static_cast<std::size_t>(t.predict(x))]++;
    int best = 0;
    for (int c = 1; c < n_classes; ++c) {
        if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)]) best = c;
    }
    return best;
}

nlohmann::json ForestModel::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : trees) arr.push_back(t.to_json());
    return {{"trees", arr}, {"n_classes", n_classes}, {"oob_error", oob_error}};
}

ForestModel ForestModel::from_json(const nlohmann::json& j) {
    ForestModel m;
    for (const auto& tj : j.at("trees")) m.trees.push_back(DecisionTree::from_json(tj));
    m.n_classes = j.at("n_classes").get<int>();
    m.oob_error = j.at("oob_error").get<double>();
    return m;
}

ForestModel train_random_forest(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, int n_classes,
                                const ForestParams& params) {
    if (params.n_trees < 1) throw std::invalid_argument("forest: need at least one tree");
    const Eigen::Index n = x.rows();
    if (n < 1) throw std::invalid_argument("forest: empty training set");

    ForestModel model;
    model.n_classes = n_classes;
    model.trees.resize(static_cast<std::size_t>(params.n_trees));
    const bool bootstrap = params.bootstrap_fraction > 0.0;

    const int mtry = params.mtry > 0
                         ? params.mtry
                         : static_cast<int>(std::max(1.0, std::floor(std::sqrt(static_cast<double>(x.cols())))));

    // Per-tree out-of-bag votes, filled into per-tree slots.
    std::vector<std::vector<int>> oob_votes;
    if (bootstrap) {
        oob_votes.assign(static_cast<std::size_t>(params.n_trees), {});
    }

    parallel_for(static_cast<std::size_t>(params.n_trees), [&](std::size_t ti) {
        Rng rng(derive_seed(params.seed, ti));
        Eigen::MatrixXd bx;
        Eigen::VectorXi by;
        std::vector<char> in_bag(static_cast<std::size_t>(n), 0);
        if (bootstrap) {
            const auto m = static_cast<Eigen::Index>(
                std::max<double>(1.0, params.bootstrap_fraction * static_cast<double>(n)));
            bx.resize(m, x.cols());
            by.resize(m);
            for (Eigen::Index r = 0; r < m; ++r) {
                const auto pick = static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
                bx.row(r) = x.row(pick);
                by(r) = y(pick);
                in_bag[static_cast<std::size_t>(pick)] = 1;
            }
        }
        TreeParams tp;
        tp.min_leaf = params.min_leaf;
        tp.mtry = mtry;
        tp.seed = derive_seed(params.seed, ti + 0x7265700ULL);
        model.trees[ti] = bootstrap ? fit_tree(bx, by, n_classes, tp) : fit_tree(x, y, n_classes, tp);

        if (bootstrap) {
            auto& votes = oob_votes[ti];
            votes.assign(static_cast<std::size_t>(n), -1);
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!in_bag[static_cast<std::size_t>(i)]) {
                    votes[static_cast<std::size_t>(i)] = model.trees[ti].predict(x.row(i).transpose());
                }
            }
        }
    });

    if (bootstrap) {
        Eigen::Index evaluated = 0, wrong = 0;
        std::vector<int> counts(static_cast<std::size_t>(n_classes));
        for (Eigen::Index i = 0; i < n; ++i) {
            std::fill(counts.begin(), counts.end(), 0);
            bool any = false;
            for (const auto& votes : oob_votes) {
                const int v = votes[static_cast<std::size_t>(i)];
                if (v >= 0) {
                    counts[static_cast<std::size_t>(v)]++;
                    any = true;
                }
            }
            if (!any) continue;
            int best = 0;
            for (int c = 1; c < n_classes; ++c) {
                if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) best = c;
            }
            ++evaluated;
            if (best != y(i)) ++wrong;
        }
        model.oob_error = evaluated ? static_cast<double>(wrong) / static_cast<double>(evaluated) : -1.0;
    }
    return model;
}

}  // namespace coman::learn
