#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "flel/dataset.hpp"

namespace flel {

struct MultiLabelConfig {
    int k_neighbors = 7;
    double smoothing = 0.05;  // S_smooth
    double threshold = 0.5;   // membership / decision threshold sigma
    // Swap the membership indicator directions to the literal printed
    // formulas (the prose reading is the default).
    bool as_printed = false;
    // Classic ML-KNN conditioning: per-label neighbor-count histograms
    // estimated on the training set instead of the per-query label sum.
    bool classic = false;
};

// FLEL-ML-KNN: Bayesian per-label posterior from fuzzy-label neighborhood
// statistics. Fed {0,1} labels as fuzzy values it reduces to the ML-KNN
// baseline arm.
class MultiLabelModel {
public:
    MultiLabelModel(FeatureMatrix train_features, FuzzyLabelMatrix train_fuzzy,
                    MultiLabelConfig cfg);

    // Smoothed fuzzy-count prior per label.
    const Eigen::VectorXd& priors() const { return priors_; }

    std::vector<std::pair<Eigen::Index, double>> neighbor_search(
        const Eigen::VectorXd& query) const;

    // Per-label (count_l, countN_l) over the K nearest neighbors; the two
    // always sum to K.
    std::vector<std::pair<int, int>> neighborhood_counts(const Eigen::VectorXd& query) const;

    // Per-label posterior P(l | query), strictly inside (0,1).
    Eigen::VectorXd predict_fuzzy(const Eigen::VectorXd& query) const;

    // Posterior thresholded at sigma (>= keeps the label).
    Eigen::VectorXd predict_logical(const Eigen::VectorXd& query) const;

    Eigen::Index label_count() const { return fuzzy_.cols(); }
    const MultiLabelConfig& config() const { return cfg_; }

private:
    FeatureMatrix features_;
    FuzzyLabelMatrix fuzzy_;
    MultiLabelConfig cfg_;
    Eigen::VectorXd priors_;
    // classic mode: per-label histograms kj[l][c], kjn[l][c] for c in 0..K
    std::vector<std::vector<double>> hist_pos_, hist_neg_;

    bool member(Eigen::Index row, Eigen::Index label) const;
};

// Smoothed priors from the continuous fuzzy column sums (no thresholding).
Eigen::VectorXd fit_priors(const FuzzyLabelMatrix& train_fuzzy, double smoothing);

// Smoothed conditional pair (P_cond_l, P_condN_l) per label; the denominator
// sums counts over labels.
std::vector<std::pair<double, double>> conditional_probabilities(
    const std::vector<std::pair<int, int>>& counts, int k, double smoothing);

// Baseline ML-KNN arm: the same pipeline fed logical labels as fuzzy values.
MultiLabelModel fit_baseline_mlknn(const FeatureMatrix& train_features,
                                   const LogicalLabelMatrix& train_logical,
                                   MultiLabelConfig cfg);

}  // namespace flel
