#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flel/errors.hpp"

namespace flel {

// N x D real-valued instance features.
using FeatureMatrix = Eigen::MatrixXd;
// N x L binary {0,1} label indicators.
using LogicalLabelMatrix = Eigen::MatrixXd;
// N x L membership degrees in [0,1]; rows are NOT constrained to sum to 1.
using FuzzyLabelMatrix = Eigen::MatrixXd;

enum class LabelMode { single_label, multi_label };

std::string to_string(LabelMode mode);
LabelMode label_mode_from_string(const std::string& s);

struct Dataset {
    FeatureMatrix features;
    LogicalLabelMatrix logical;
    std::optional<FuzzyLabelMatrix> fuzzy;
    LabelMode mode = LabelMode::single_label;
    std::string name;
    std::vector<std::string> class_names;  // single-label: original category values

    Eigen::Index n() const { return features.rows(); }
    Eigen::Index dims() const { return features.cols(); }
    Eigen::Index labels() const { return logical.cols(); }
};

// Throws ValidationError on any invariant breach.
void validate_features(const FeatureMatrix& x);
void validate_logical(const LogicalLabelMatrix& y, LabelMode mode);
void validate_fuzzy(const FuzzyLabelMatrix& u);
void validate_dataset(const Dataset& ds);

struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd std_dev;  // population std; 0 marks a constant column

    FeatureMatrix apply(const FeatureMatrix& x) const;
};

// Columns mapped to mean 0 / unit population std; constant columns to all zeros.
std::pair<FeatureMatrix, Standardizer> standardize(const FeatureMatrix& x);

struct FoldSplit {
    int fold_count = 5;
    std::vector<int> assignments;  // per-instance fold index
    std::uint64_t seed = 0;

    std::vector<Eigen::Index> train_indices(int fold) const;
    std::vector<Eigen::Index> test_indices(int fold) const;
};

// Deterministic for a fixed seed. When class_of is non-empty (single-label
// mode) the split is stratified by class.
FoldSplit kfold_split(Eigen::Index n, int fold_count, std::uint64_t seed,
                      const std::vector<int>& class_of = {});

// Single-label: one-hot at per-row argmax, ties to lowest column index.
// Multi-label: entry 1 iff value >= threshold.
LogicalLabelMatrix fuzzy_to_logical(const FuzzyLabelMatrix& fuzzy, LabelMode mode,
                                    double threshold = 0.5);

// Per-row argmax with lowest-index tie-break (shared by fcm and classifiers).
std::vector<int> row_argmax(const Eigen::MatrixXd& m);

// CSV with header; features first, then label_cols label columns. In
// single-label mode a single trailing categorical column is one-hot encoded
// (classes sorted lexicographically).
Dataset load_csv(const std::string& path, int label_cols, LabelMode mode);

// Reads "<stem>.json" descriptor {"label_cols": int, "mode": "single"|"multi"}
// next to the CSV, then load_csv. Loads "<stem>.fuzzy.csv" when present.
Dataset load_dataset(const std::string& csv_path);

void save_csv(const std::string& path, const Dataset& ds);
void save_descriptor(const std::string& csv_path, const Dataset& ds);

// Plain numeric matrix with header row; used for fuzzy label files.
void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                     const std::string& col_prefix, int significant_digits = 17);
Eigen::MatrixXd load_matrix_csv(const std::string& path);

}  // namespace flel
