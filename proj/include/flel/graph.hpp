#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "flel/dataset.hpp"

namespace flel {

enum class GraphNormalization { symmetric, row_stochastic };

struct GraphConfig {
    std::optional<double> kernel_sigma;  // empty -> median pairwise distance
    int knn = 0;                         // 0 = fully connected
    bool symmetrize = true;              // average W with its transpose before P
    GraphNormalization normalization = GraphNormalization::symmetric;
};

struct WeightGraph {
    Eigen::MatrixXd weights;      // N x N, nonnegative, zero diagonal
    Eigen::VectorXd degree;       // row sums of weights
    Eigen::MatrixXd propagation;  // normalized propagation matrix P
    double kernel_sigma = 0.0;
};

// Median of all pairwise Euclidean distances (the median heuristic bandwidth).
double median_pairwise_distance(const FeatureMatrix& features);

// exp(-||xi - xj||^2 / (2 sigma^2)) off the diagonal, 0 on it.
Eigen::MatrixXd gaussian_similarity(const FeatureMatrix& features, double sigma);

// w_ij <- base_ij * membership(j, dominant[i]); generally asymmetric.
Eigen::MatrixXd cluster_weighted_similarity(const Eigen::MatrixXd& base,
                                            const Eigen::MatrixXd& membership,
                                            const std::vector<int>& dominant);

// Keep w_ij only when j is among i's k strongest neighbors or vice versa.
Eigen::MatrixXd knn_sparsify(const Eigen::MatrixXd& weights, int k);

// P = A^{-1/2} W A^{-1/2} (or A^{-1} W); zero-degree vertices get zero
// rows/cols. Throws on an all-zero weight matrix.
WeightGraph build_propagation(const Eigen::MatrixXd& weights,
                              GraphNormalization normalization = GraphNormalization::symmetric);

// Full pipeline: Gaussian kernel, FCM-membership weighting, optional knn
// sparsification and symmetrization, then normalization.
WeightGraph build_cluster_weighted_graph(const FeatureMatrix& features,
                                         const Eigen::MatrixXd& membership,
                                         const GraphConfig& cfg);

}  // namespace flel
