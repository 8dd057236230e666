#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coman/learn/adaboost.hpp"

namespace coman::learn {

nlohmann::json Stump::to_json() const {
    return {{"feature", feature}, {"threshold", threshold}, {"left", left_class}, {"right", right_class}};
}

Stump Stump::from_json(const nlohmann::json& j) {
    Stump s;
    s.feature = j.at("feature").get<int>();
    s.threshold = j.at("threshold").get<double>();
    s.left_class = j.at("left").get<int>();
    s.right_class = j.at("right").get<int>();
    return s;
}

Stump fit_stump_pseudo_loss(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                            const Eigen::MatrixXd& mislabel) {
    const Eigen::Index n = x.rows();
    const Eigen::Index d = x.cols();
    const Eigen::Index c_cnt = mislabel.cols();

    // Per-sample total mislabel mass.
    Eigen::VectorXd w = mislabel.rowwise().sum();

    // Totals for the "everything on one side" case.
    const double w_total = w.sum();
    Eigen::VectorXd wown_total = Eigen::VectorXd::Zero(c_cnt);   // sum of W_i over samples labelled c
    Eigen::VectorXd d_total = mislabel.colwise().sum();          // sum of D(i, c)
    for (Eigen::Index i = 0; i < n; ++i) wown_total(y(i)) += w(i);
    // Note D(i, y_i) = 0, so no "down" correction is needed for d_total.

    auto side_cost = [&](double w_side, const Eigen::VectorXd& wown_side,
                         const Eigen::VectorXd& d_side, int* best_class) {
        double best = std::numeric_limits<double>::infinity();
        int cls = 0;
        for (Eigen::Index c = 0; c < c_cnt; ++c) {
            const double cost = (w_side - wown_side(c)) + d_side(c);
            if (cost < best - 1e-15) {
                best = cost;
                cls = static_cast<int>(c);
            }
        }
        *best_class = cls;
        return best;
    };

    Stump best_stump;
    int leaf_class = 0;
    double best_cost = side_cost(w_total, wown_total, d_total, &leaf_class);
    best_stump.feature = -1;
    best_stump.left_class = best_stump.right_class = leaf_class;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    Eigen::VectorXd wown_left(c_cnt), d_left(c_cnt);
    for (Eigen::Index f = 0; f < d; ++f) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](Eigen::Index a, Eigen::Index b) { return x(a, f) < x(b, f); });

        double w_left = 0.0;
        wown_left.setZero();
        d_left.setZero();
        for (Eigen::Index pos = 0; pos + 1 < n; ++pos) {
            const Eigen::Index i = order[static_cast<std::size_t>(pos)];
            w_left += w(i);
            wown_left(y(i)) += w(i);
            d_left += mislabel.row(i).transpose();
            const double v = x(i, f);
            const double v_next = x(order[static_cast<std::size_t>(pos + 1)], f);
            if (v_next <= v) continue;  // only split between distinct values
            int lc = 0, rc = 0;
            const double cost = side_cost(w_left, wown_left, d_left, &lc) +
                                side_cost(w_total - w_left, wown_total - wown_left,
                                          d_total - d_left, &rc);
            if (cost < best_cost - 1e-15) {
                best_cost = cost;
                best_stump.feature = static_cast<int>(f);
                best_stump.threshold = 0.5 * (v + v_next);
                best_stump.left_class = lc;
                best_stump.right_class = rc;
            }
        }
    }
    return best_stump;
}

}  // namespace coman::learn
