#include <cmath>
#include <stdexcept>

#include "coman/core/errors.hpp"
#include "coman/learn/adaboost.hpp"

namespace coman::learn {

int AdaBoostModel::predict(const Eigen::VectorXd& x) const {
    Eigen::VectorXd votes = Eigen::VectorXd::Zero(n_classes);
    for (std::size_t t = 0; t < stumps.size(); ++t) {
        votes(stumps[t].predict(x)) += weights[t];
    }
    int best = 0;
    for (int c = 1; c < n_classes; ++c) {
        if (votes(c) > votes(best)) best = c;  // ties keep the lowest class
    }
    return best;
}

std::vector<double> AdaBoostModel::bound_sequence() const {
    std::vector<double> bounds;
    double prod = static_cast<double>(n_classes - 1);
    for (double eps : pseudo_losses) {
        prod *= 2.0 * std::sqrt(std::max(eps * (1.0 - eps), 0.0));
        bounds.push_back(prod);
    }
    return bounds;
}

nlohmann::json AdaBoostModel::to_json() const {
    nlohmann::json js = nlohmann::json::array();
    for (const auto& s : stumps) js.push_back(s.to_json());
    return {{"stumps", js}, {"weights", weights}, {"pseudo_losses", pseudo_losses}, {"n_classes", n_classes}};
}

AdaBoostModel AdaBoostModel::from_json(const nlohmann::json& j) {
    AdaBoostModel m;
    for (const auto& js : j.at("stumps")) m.stumps.push_back(Stump::from_json(js));
    m.weights = j.at("weights").get<std::vector<double>>();
    m.pseudo_losses = j.at("pseudo_losses").get<std::vector<double>>();
    m.n_classes = j.at("n_classes").get<int>();
    return m;
}

AdaBoostModel train_adaboost(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, int n_classes,
                             int rounds) {
    if (rounds < 1) throw std::invalid_argument("adaboost: rounds must be >= 1");
    const Eigen::Index n = x.rows();
    if (n < 1) throw std::invalid_argument("adaboost: empty training set");

    AdaBoostModel model;
    model.n_classes = n_classes;

    // Mislabel distribution over (sample, wrong label) pairs.
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n_classes, 1.0 / (static_cast<double>(n) * (n_classes - 1)));
    for (Eigen::Index i = 0; i < n; ++i) d(i, y(i)) = 0.0;

    for (int t = 0; t < rounds; ++t) {
        const Stump stump = fit_stump_pseudo_loss(x, y, d);

        // Pseudo-loss of a hard-label hypothesis: (1/2) sum_i cost(i, pred_i).
        double eps = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const int pred = stump.predict(x.row(i).transpose());
            if (pred != y(i)) eps += d.row(i).sum() + d(i, pred);
        }
        eps *= 0.5;

        if (eps >= 0.5) break;  // weak learner no better than chance: keep the ensemble so far
        const double eps_c = std::max(eps, 1e-12);
        const double beta = eps_c / (1.0 - eps_c);

        model.stumps.push_back(stump);
        model.weights.push_back(std::log(1.0 / beta));
        model.pseudo_losses.push_back(eps);

        if (eps <= 1e-12) break;  // perfect hypothesis

        // D(i,y) *= beta^{(1/2)(1 + h(x_i, y_i) - h(x_i, y))}
        const double sqrt_beta = std::sqrt(beta);
        double z = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const int pred = stump.predict(x.row(i).transpose());
            const double h_true = pred == y(i) ? 1.0 : 0.0;
            for (int c = 0; c < n_classes; ++c) {
                if (c == y(i)) continue;
                const double h_wrong = pred == c ? 1.0 : 0.0;
                d(i, c) *= std::pow(sqrt_beta, 1.0 + h_true - h_wrong);
                z += d(i, c);
            }
        }
        d /= z;
    }

    if (model.stumps.empty()) {
        throw TrainingError("adaboost: first weak learner no better than chance");
    }
    return model;
}

}  // namespace coman::learn
