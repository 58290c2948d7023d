#include "flel/classify_multi.hpp"

#include <algorithm>

namespace flel {

Eigen::VectorXd fit_priors(const FuzzyLabelMatrix& train_fuzzy, double smoothing) {
    if (smoothing <= 0.0) throw PlanError("smoothing must be > 0");
    const double n = double(train_fuzzy.rows());
    Eigen::VectorXd global = train_fuzzy.colwise().sum();
    return (global.array() + smoothing) / (n + 2.0 * smoothing);
}

std::vector<std::pair<double, double>> conditional_probabilities(
    const std::vector<std::pair<int, int>>& counts, int k, double smoothing) {
    if (smoothing <= 0.0) throw PlanError("smoothing must be > 0");
    double sum_pos = 0.0, sum_neg = 0.0;
    for (const auto& [c, cn] : counts) {
        sum_pos += c;
        sum_neg += cn;
    }
    const double base = smoothing * double(k + 1);
    std::vector<std::pair<double, double>> out;
    out.reserve(counts.size());
    for (const auto& [c, cn] : counts)
        out.emplace_back((smoothing + c) / (base + sum_pos), (smoothing + cn) / (base + sum_neg));
    return out;
}

MultiLabelModel::MultiLabelModel(FeatureMatrix train_features, FuzzyLabelMatrix train_fuzzy,
                                 MultiLabelConfig cfg)
    : features_(std::move(train_features)), fuzzy_(std::move(train_fuzzy)), cfg_(cfg) {
    if (features_.rows() != fuzzy_.rows())
        throw ValidationError("MultiLabelModel: feature/label row mismatch");
    if (cfg_.k_neighbors < 1 || Eigen::Index(cfg_.k_neighbors) > features_.rows())
        throw PlanError("MultiLabelModel: k_neighbors must lie in [1, N_train]");
    if (cfg_.threshold <= 0.0 || cfg_.threshold >= 1.0)
        throw PlanError("MultiLabelModel: threshold must lie in (0,1)");
    priors_ = fit_priors(fuzzy_, cfg_.smoothing);

    if (cfg_.classic) {
        const Eigen::Index n = features_.rows();
        const Eigen::Index l_count = fuzzy_.cols();
        const int k = cfg_.k_neighbors;
        hist_pos_.assign(std::size_t(l_count), std::vector<double>(std::size_t(k) + 1, 0.0));
        hist_neg_.assign(std::size_t(l_count), std::vector<double>(std::size_t(k) + 1, 0.0));
        for (Eigen::Index i = 0; i < n; ++i) {
            // K nearest among the other training instances
            std::vector<std::pair<Eigen::Index, double>> all;
            all.reserve(std::size_t(n) - 1);
            for (Eigen::Index j = 0; j < n; ++j)
                if (j != i) all.emplace_back(j, (features_.row(j) - features_.row(i)).norm());
            int kk = std::min<int>(k, int(all.size()));
            std::partial_sort(all.begin(), all.begin() + kk, all.end(),
                              [](const auto& a, const auto& b) {
                                  if (a.second != b.second) return a.second < b.second;
                                  return a.first < b.first;
                              });
            for (Eigen::Index l = 0; l < l_count; ++l) {
                int c = 0;
                for (int r = 0; r < kk; ++r)
                    if (member(all[std::size_t(r)].first, l)) ++c;
                if (member(i, l))
                    hist_pos_[std::size_t(l)][std::size_t(c)] += 1.0;
                else
                    hist_neg_[std::size_t(l)][std::size_t(c)] += 1.0;
            }
        }
    }
}

bool MultiLabelModel::member(Eigen::Index row, Eigen::Index label) const {
    // Prose reading: membership when the fuzzy value strictly exceeds the
    // threshold; --as-printed keeps the literal (transposed) indicators.
    bool above = fuzzy_(row, label) > cfg_.threshold;
    return cfg_.as_printed ? !above : above;
}

std::vector<std::pair<Eigen::Index, double>> MultiLabelModel::neighbor_search(
    const Eigen::VectorXd& query) const {
    if (query.size() != features_.cols())
        throw ValidationError("neighbor_search: query dimension mismatch");
    std::vector<std::pair<Eigen::Index, double>> all(std::size_t(features_.rows()));
    for (Eigen::Index i = 0; i < features_.rows(); ++i)
        all[std::size_t(i)] = {i, (features_.row(i).transpose() - query).norm()};
    std::partial_sort(all.begin(), all.begin() + cfg_.k_neighbors, all.end(),
                      [](const auto& a, const auto& b) {
                          if (a.second != b.second) return a.second < b.second;
                          return a.first < b.first;
                      });
    all.resize(std::size_t(cfg_.k_neighbors));
    return all;
}

std::vector<std::pair<int, int>> MultiLabelModel::neighborhood_counts(
    const Eigen::VectorXd& query) const {
    auto neighbors = neighbor_search(query);
    std::vector<std::pair<int, int>> counts(std::size_t(fuzzy_.cols()), {0, 0});
    for (const auto& [idx, dist] : neighbors)
        for (Eigen::Index l = 0; l < fuzzy_.cols(); ++l) {
            if (member(idx, l))
                ++counts[std::size_t(l)].first;
            else
                ++counts[std::size_t(l)].second;
        }
    return counts;
}

Eigen::VectorXd MultiLabelModel::predict_fuzzy(const Eigen::VectorXd& query) const {
    auto counts = neighborhood_counts(query);
    const Eigen::Index l_count = fuzzy_.cols();
    Eigen::VectorXd posterior(l_count);

    if (cfg_.classic) {
        const double s = cfg_.smoothing;
        const int k = cfg_.k_neighbors;
        for (Eigen::Index l = 0; l < l_count; ++l) {
            int c = counts[std::size_t(l)].first;
            double mass_pos = 0.0, mass_neg = 0.0;
            for (int j = 0; j <= k; ++j) {
                mass_pos += hist_pos_[std::size_t(l)][std::size_t(j)];
                mass_neg += hist_neg_[std::size_t(l)][std::size_t(j)];
            }
            double pc = (s + hist_pos_[std::size_t(l)][std::size_t(c)]) / (s * (k + 1) + mass_pos);
            double pcn = (s + hist_neg_[std::size_t(l)][std::size_t(c)]) / (s * (k + 1) + mass_neg);
            double num = priors_(l) * pc;
            posterior(l) = num / (num + (1.0 - priors_(l)) * pcn);
        }
        return posterior;
    }

    auto cond = conditional_probabilities(counts, cfg_.k_neighbors, cfg_.smoothing);
    for (Eigen::Index l = 0; l < l_count; ++l) {
        double num = priors_(l) * cond[std::size_t(l)].first;
        posterior(l) = num / (num + (1.0 - priors_(l)) * cond[std::size_t(l)].second);
    }
    return posterior;
}

Eigen::VectorXd MultiLabelModel::predict_logical(const Eigen::VectorXd& query) const {
    Eigen::VectorXd p = predict_fuzzy(query);
    Eigen::VectorXd out(p.size());
    for (Eigen::Index l = 0; l < p.size(); ++l) out(l) = p(l) >= cfg_.threshold ? 1.0 : 0.0;
    return out;
}

MultiLabelModel fit_baseline_mlknn(const FeatureMatrix& train_features,
                                   const LogicalLabelMatrix& train_logical,
                                   MultiLabelConfig cfg) {
    validate_logical(train_logical, LabelMode::multi_label);
    return MultiLabelModel(train_features, train_logical, cfg);
}

}  // namespace flel
