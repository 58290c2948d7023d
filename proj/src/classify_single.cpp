#include "flel/classify_single.hpp"

#include <algorithm>
#include <cmath>

namespace flel {

SingleLabelModel::SingleLabelModel(FeatureMatrix train_features, FuzzyLabelMatrix train_fuzzy,
                                   int k_neighbors, double epsilon)
    : features_(std::move(train_features)),
      fuzzy_(std::move(train_fuzzy)),
      k_(k_neighbors),
      epsilon_(epsilon) {
    if (features_.rows() != fuzzy_.rows())
        throw ValidationError("SingleLabelModel: feature/label row mismatch");
    if (k_ < 1 || Eigen::Index(k_) > features_.rows())
        throw PlanError("SingleLabelModel: k_neighbors must lie in [1, N_train]");
    if (epsilon_ <= 0.0) throw PlanError("SingleLabelModel: epsilon must be > 0");
    neighbor_class_ = row_argmax(fuzzy_);
}

std::vector<std::pair<Eigen::Index, double>> SingleLabelModel::neighbor_search(
    const Eigen::VectorXd& query) const {
    if (query.size() != features_.cols())
        throw ValidationError("neighbor_search: query dimension mismatch");
    std::vector<std::pair<Eigen::Index, double>> all(std::size_t(features_.rows()));
    for (Eigen::Index i = 0; i < features_.rows(); ++i)
        all[std::size_t(i)] = {i, (features_.row(i).transpose() - query).norm()};
    std::partial_sort(all.begin(), all.begin() + k_, all.end(),
                      [](const auto& a, const auto& b) {
                          if (a.second != b.second) return a.second < b.second;
                          return a.first < b.first;
                      });
    all.resize(std::size_t(k_));
    return all;
}

Eigen::VectorXd SingleLabelModel::predict_fuzzy(const Eigen::VectorXd& query) const {
    auto neighbors = neighbor_search(query);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(fuzzy_.cols());
    double total = 0.0;
    for (const auto& [idx, dist] : neighbors) {
        double w = 1.0 / (dist + epsilon_);
        acc += w * fuzzy_.row(idx).transpose();
        total += w;
    }
    return acc / total;
}

int SingleLabelModel::predict_class(const Eigen::VectorXd& query) const {
    Eigen::VectorXd u = predict_fuzzy(query);
    int best = 0;
    for (Eigen::Index c = 1; c < u.size(); ++c)
        if (u(c) > u(best)) best = int(c);
    return best;
}

int SingleLabelModel::predict_majority(const Eigen::VectorXd& query) const {
    auto neighbors = neighbor_search(query);
    std::vector<int> votes(std::size_t(fuzzy_.cols()), 0);
    for (const auto& [idx, dist] : neighbors) ++votes[std::size_t(neighbor_class_[std::size_t(idx)])];
    int best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c)
        if (votes[c] > votes[std::size_t(best)]) best = int(c);
    return best;
}

}  // namespace flel
