#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "flel/dataset.hpp"

namespace flel {

// FLEL-SL-KNN: distance-weighted aggregation of training fuzzy labels. Fed
// one-hot logical labels it degenerates into soft voting-based KNN.
class SingleLabelModel {
public:
    SingleLabelModel(FeatureMatrix train_features, FuzzyLabelMatrix train_fuzzy, int k_neighbors,
                     double epsilon = 1e-10);

    // K nearest (index, distance) pairs, ascending distance, ties by index.
    std::vector<std::pair<Eigen::Index, double>> neighbor_search(
        const Eigen::VectorXd& query) const;

    // Inverse-distance weighted average of neighbor fuzzy rows.
    Eigen::VectorXd predict_fuzzy(const Eigen::VectorXd& query) const;

    // argmax of predict_fuzzy, ties to lowest class index.
    int predict_class(const Eigen::VectorXd& query) const;

    // Classic unweighted hard-majority KNN over the argmax class of each
    // neighbor's label row; class ties to lowest index.
    int predict_majority(const Eigen::VectorXd& query) const;

    int k_neighbors() const { return k_; }
    Eigen::Index class_count() const { return fuzzy_.cols(); }

private:
    FeatureMatrix features_;
    FuzzyLabelMatrix fuzzy_;
    std::vector<int> neighbor_class_;  // argmax class per training row
    int k_;
    double epsilon_;
};

}  // namespace flel
