#include "flel/graph.hpp"

#include <algorithm>
#include <cmath>

namespace flel {

namespace {

Eigen::MatrixXd pairwise_sq_dist(const FeatureMatrix& x) {
    Eigen::VectorXd n = x.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = -2.0 * x * x.transpose();
    d2.colwise() += n;
    d2.rowwise() += n.transpose();
    return d2.cwiseMax(0.0);
}

}  // namespace

double median_pairwise_distance(const FeatureMatrix& features) {
    const Eigen::Index n = features.rows();
    if (n < 2) throw ValidationError("median_pairwise_distance needs N >= 2");
    Eigen::MatrixXd d2 = pairwise_sq_dist(features);
    std::vector<double> dists;
    dists.reserve(std::size_t(n) * std::size_t(n - 1) / 2);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) dists.push_back(std::sqrt(d2(i, j)));
    auto mid = dists.begin() + std::ptrdiff_t(dists.size() / 2);
    std::nth_element(dists.begin(), mid, dists.end());
    if (dists.size() % 2 == 1) return *mid;
    double hi = *mid;
    double lo = *std::max_element(dists.begin(), mid);
    return 0.5 * (lo + hi);
}

Eigen::MatrixXd gaussian_similarity(const FeatureMatrix& features, double sigma) {
    if (sigma <= 0.0) throw PlanError("kernel sigma must be > 0");
    Eigen::MatrixXd w = (-pairwise_sq_dist(features) / (2.0 * sigma * sigma)).array().exp();
    w.diagonal().setZero();
    return w;
}

Eigen::MatrixXd cluster_weighted_similarity(const Eigen::MatrixXd& base,
                                            const Eigen::MatrixXd& membership,
                                            const std::vector<int>& dominant) {
    if (base.rows() != base.cols() || base.rows() != membership.rows() ||
        dominant.size() != std::size_t(base.rows()))
        throw ValidationError("cluster_weighted_similarity: shape mismatch");
    Eigen::MatrixXd w(base.rows(), base.cols());
    for (Eigen::Index i = 0; i < base.rows(); ++i) {
        int k_max = dominant[std::size_t(i)];
        w.row(i) = base.row(i).array() * membership.col(k_max).transpose().array();
    }
    return w;
}

Eigen::MatrixXd knn_sparsify(const Eigen::MatrixXd& weights, int k) {
    const Eigen::Index n = weights.rows();
    if (k <= 0 || Eigen::Index(k) >= n - 1) return weights;
    Eigen::MatrixXd keep = Eigen::MatrixXd::Zero(n, n);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) order[std::size_t(j)] = j;
        std::partial_sort(order.begin(), order.begin() + k + 1, order.end(),
                          [&](Eigen::Index a, Eigen::Index b) {
                              if (weights(i, a) != weights(i, b))
                                  return weights(i, a) > weights(i, b);
                              return a < b;
                          });
        int kept = 0;
        for (Eigen::Index r = 0; r < n && kept < k; ++r) {
            Eigen::Index j = order[std::size_t(r)];
            if (j == i) continue;
            keep(i, j) = 1.0;
            ++kept;
        }
    }
    // Union with the transpose keeps the graph symmetric in structure.
    Eigen::MatrixXd mask = keep.cwiseMax(keep.transpose());
    return weights.cwiseProduct(mask);
}

WeightGraph build_propagation(const Eigen::MatrixXd& weights, GraphNormalization normalization) {
    if (weights.rows() != weights.cols()) throw ValidationError("weight matrix must be square");
    if ((weights.array() < 0.0).any()) throw ValidationError("weights must be nonnegative");
    if (weights.diagonal().cwiseAbs().maxCoeff() != 0.0)
        throw ValidationError("weight matrix must have a zero diagonal");
    if (weights.maxCoeff() <= 0.0) throw ValidationError("all-zero weight matrix: no graph structure");

    WeightGraph g;
    g.weights = weights;
    g.degree = weights.rowwise().sum();
    Eigen::VectorXd inv_sqrt(g.degree.size());
    for (Eigen::Index i = 0; i < g.degree.size(); ++i)
        inv_sqrt(i) = g.degree(i) > 0.0 ? 1.0 / std::sqrt(g.degree(i)) : 0.0;

    if (normalization == GraphNormalization::symmetric) {
        g.propagation = inv_sqrt.asDiagonal() * weights * inv_sqrt.asDiagonal();
    } else {
        Eigen::VectorXd inv(g.degree.size());
        for (Eigen::Index i = 0; i < g.degree.size(); ++i)
            inv(i) = g.degree(i) > 0.0 ? 1.0 / g.degree(i) : 0.0;
        g.propagation = inv.asDiagonal() * weights;
    }
    return g;
}

WeightGraph build_cluster_weighted_graph(const FeatureMatrix& features,
                                         const Eigen::MatrixXd& membership,
                                         const GraphConfig& cfg) {
    double sigma = cfg.kernel_sigma ? *cfg.kernel_sigma : median_pairwise_distance(features);
    if (sigma <= 0.0) sigma = 1.0;  // degenerate data: all points identical
    Eigen::MatrixXd base = gaussian_similarity(features, sigma);
    Eigen::MatrixXd w = cluster_weighted_similarity(base, membership, row_argmax(membership));
    if (cfg.knn > 0) w = knn_sparsify(w, cfg.knn);
    if (cfg.symmetrize) w = (0.5 * (w + w.transpose())).eval();
    WeightGraph g = build_propagation(w, cfg.normalization);
    g.kernel_sigma = sigma;
    return g;
}

}  // namespace flel
