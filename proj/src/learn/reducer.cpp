#include "coman/learn/reducer.hpp"

#include <stdexcept>

namespace coman::learn {

Dataset Dataset::from_windows(const std::vector<dataset::LabeledWindow>& windows, int n_classes) {
    Dataset d;
    d.n_classes = n_classes;
    if (windows.empty()) return d;
    const auto n = static_cast<Eigen::Index>(windows.size());
    const auto dim = static_cast<Eigen::Index>(windows.front().features.size());
    d.x.resize(n, dim);
    d.y.resize(n);
    d.trial_ids.reserve(windows.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& w = windows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(w.features.size()) != dim) {
            throw std::invalid_argument("inconsistent feature lengths in window set");
        }
        for (Eigen::Index j = 0; j < dim; ++j) d.x(i, j) = w.features[static_cast<std::size_t>(j)];
        d.y(i) = w.label;
        d.trial_ids.push_back(w.trial_id);
    }
    return d;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
    Standardizer s;
    s.mean = x.colwise().mean();
    Eigen::MatrixXd centered = x.rowwise() - s.mean.transpose();
    s.scale = (centered.array().square().colwise().mean()).sqrt();
    for (Eigen::Index i = 0; i < s.scale.size(); ++i) {
        if (s.scale(i) < 1e-12) s.scale(i) = 1.0;  // constant feature: leave centered
    }
    return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd out = x.rowwise() - mean.transpose();
    out.array().rowwise() /= scale.transpose().array();
    return out;
}

const char* to_string(ReducerKind k) {
    switch (k) {
        case ReducerKind::None: return "none";
        case ReducerKind::Pca: return "pca";
        case ReducerKind::Lda: return "lda";
    }
    return "none";
}

ReducerKind reducer_kind_from_string(const std::string& s) {
    if (s == "none") return ReducerKind::None;
    if (s == "pca") return ReducerKind::Pca;
    if (s == "lda") return ReducerKind::Lda;
    throw std::invalid_argument("unknown reducer: " + s);
}

Eigen::MatrixXd Reducer::apply(const Eigen::MatrixXd& x) const {
    if (kind == ReducerKind::None) return x;
    return (x.rowwise() - mean.transpose()) * projection.transpose();
}

namespace {

/// Deterministic sign convention: the entry of largest magnitude positive.
void fix_signs(Eigen::MatrixXd& rows) {
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        Eigen::Index imax = 0;
        rows.row(r).cwiseAbs().maxCoeff(&imax);
        if (rows(r, imax) < 0) rows.row(r) = -rows.row(r);
    }
}

}  // namespace

Reducer fit_pca(const Eigen::MatrixXd& x, int d) {
    if (d < 1 || d > x.cols()) throw std::invalid_argument("pca: d out of range");
    if (x.rows() < 2) throw std::invalid_argument("pca: need at least 2 samples");
    Reducer r;
    r.kind = ReducerKind::Pca;
    r.mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - r.mean.transpose();
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(x.rows() - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) throw std::runtime_error("pca: eigendecomposition failed");
    // Eigenvalues ascend; take the top d in descending order.
    r.projection.resize(d, x.cols());
    for (int i = 0; i < d; ++i) {
        r.projection.row(i) = eig.eigenvectors().col(x.cols() - 1 - i).transpose();
    }
    fix_signs(r.projection);
    return r;
}

Reducer fit_lda(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, int n_classes, int d) {
    if (d < 1 || d > n_classes - 1) throw std::invalid_argument("lda: d must be in [1, C-1]");
    if (d > x.cols()) throw std::invalid_argument("lda: d exceeds feature count");
    const Eigen::Index n = x.rows();
    const Eigen::Index dim = x.cols();

    std::vector<Eigen::Index> counts(static_cast<std::size_t>(n_classes), 0);
    for (Eigen::Index i = 0; i < n; ++i) counts[static_cast<std::size_t>(y(i))]++;
    for (int c = 0; c < n_classes; ++c) {
        if (counts[static_cast<std::size_t>(c)] < 2) {
            throw std::invalid_argument("lda: every class needs at least 2 samples");
        }
    }

    Reducer r;
    r.kind = ReducerKind::Lda;
    r.mean = x.colwise().mean();

    Eigen::MatrixXd class_means = Eigen::MatrixXd::Zero(n_classes, dim);
    for (Eigen::Index i = 0; i < n; ++i) class_means.row(y(i)) += x.row(i);
    for (int c = 0; c < n_classes; ++c) class_means.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);

    Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd diff = x.row(i).transpose() - class_means.row(y(i)).transpose();
        sw.noalias() += diff * diff.transpose();
    }
    Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(dim, dim);
    for (int c = 0; c < n_classes; ++c) {
        const Eigen::VectorXd diff = class_means.row(c).transpose() - r.mean;
        sb.noalias() += static_cast<double>(counts[static_cast<std::size_t>(c)]) * diff * diff.transpose();
    }

    // Ridge keeps the within scatter invertible when features are collinear.
    const double ridge = 1e-6 * sw.trace() / static_cast<double>(dim) + 1e-12;
    sw += ridge * Eigen::MatrixXd::Identity(dim, dim);

    const Eigen::LLT<Eigen::MatrixXd> llt(sw);
    if (llt.info() != Eigen::Success) throw std::runtime_error("lda: within-scatter not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    const Eigen::MatrixXd li = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(dim, dim));
    const Eigen::MatrixXd m = li * sb * li.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()));
    if (eig.info() != Eigen::Success) throw std::runtime_error("lda: eigendecomposition failed");

    r.projection.resize(d, dim);
    for (int i = 0; i < d; ++i) {
        const Eigen::VectorXd w = eig.eigenvectors().col(dim - 1 - i);
        Eigen::VectorXd a = li.transpose() * w;
        a.normalize();
        r.projection.row(i) = a.transpose();
    }
    fix_signs(r.projection);
    return r;
}

}  // namespace coman::learn
