#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "flel/dataset.hpp"

namespace flel {

// N_test x L real confidence scores.
using ScoreMatrix = Eigen::MatrixXd;

enum class F1Averaging { binary, macro };

// Exact-match fraction over predicted class indices.
double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

// binary: F1 of the positive class (index 1); macro: unweighted mean of
// per-class F1, classes with no predicted and no true positives contribute 0.
double f1(const std::vector<int>& pred, const std::vector<int>& truth, int n_classes,
          F1Averaging averaging);

// Rank-based (Mann-Whitney) AUC with ties counting 1/2; absent when the
// truth is single-class.
std::optional<double> roc_auc(const Eigen::VectorXd& scores, const std::vector<int>& truth);

// Macro one-vs-rest AUC over class columns; absent classes are skipped.
std::optional<double> roc_auc_macro(const ScoreMatrix& scores, const std::vector<int>& truth,
                                    int n_classes);

double hamming_loss(const LogicalLabelMatrix& pred, const LogicalLabelMatrix& truth);

// Ranking metrics skip instances without the required relevant/irrelevant
// labels; the skip count is reported alongside the value.
struct RankingValue {
    double value = 0.0;
    Eigen::Index skipped = 0;
};

RankingValue average_precision(const ScoreMatrix& scores, const LogicalLabelMatrix& truth);
RankingValue one_error(const ScoreMatrix& scores, const LogicalLabelMatrix& truth);
RankingValue ranking_loss(const ScoreMatrix& scores, const LogicalLabelMatrix& truth);
RankingValue coverage(const ScoreMatrix& scores, const LogicalLabelMatrix& truth);

// Rank of every label for one score row: rank 1 = highest score, score ties
// broken toward the lower label index.
std::vector<int> score_ranks(const Eigen::VectorXd& scores);

}  // namespace flel
