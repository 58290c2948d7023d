#include "flel/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace flel {

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.empty() || pred.size() != truth.size())
        throw ValidationError("accuracy: empty or mismatched inputs");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i] == truth[i]) ++hits;
    return double(hits) / double(pred.size());
}

namespace {
double class_f1(const std::vector<int>& pred, const std::vector<int>& truth, int cls) {
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        bool p = pred[i] == cls, t = truth[i] == cls;
        tp += p && t;
        fp += p && !t;
        fn += !p && t;
    }
    if (tp == 0) return 0.0;  // covers the no-positive convention
    double prec = double(tp) / double(tp + fp);
    double rec = double(tp) / double(tp + fn);
    return 2.0 * prec * rec / (prec + rec);
}
}  // namespace

double f1(const std::vector<int>& pred, const std::vector<int>& truth, int n_classes,
          F1Averaging averaging) {
    if (pred.empty() || pred.size() != truth.size())
        throw ValidationError("f1: empty or mismatched inputs");
    if (averaging == F1Averaging::binary) return class_f1(pred, truth, 1);
    double sum = 0.0;
    for (int c = 0; c < n_classes; ++c) sum += class_f1(pred, truth, c);
    return sum / double(n_classes);
}

std::optional<double> roc_auc(const Eigen::VectorXd& scores, const std::vector<int>& truth) {
    if (std::size_t(scores.size()) != truth.size())
        throw ValidationError("roc_auc: size mismatch");
    long n_pos = 0, n_neg = 0;
    for (int t : truth) (t ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) return std::nullopt;
    double wins = 0.0;
    for (Eigen::Index i = 0; i < scores.size(); ++i) {
        if (!truth[std::size_t(i)]) continue;
        for (Eigen::Index j = 0; j < scores.size(); ++j) {
            if (truth[std::size_t(j)]) continue;
            if (scores(i) > scores(j))
                wins += 1.0;
            else if (scores(i) == scores(j))
                wins += 0.5;
        }
    }
    return wins / (double(n_pos) * double(n_neg));
}

std::optional<double> roc_auc_macro(const ScoreMatrix& scores, const std::vector<int>& truth,
                                    int n_classes) {
    double sum = 0.0;
    int counted = 0;
    for (int c = 0; c < n_classes; ++c) {
        std::vector<int> binary(truth.size());
        for (std::size_t i = 0; i < truth.size(); ++i) binary[i] = truth[i] == c ? 1 : 0;
        auto auc = roc_auc(scores.col(c), binary);
        if (auc) {
            sum += *auc;
            ++counted;
        }
    }
    if (counted == 0) return std::nullopt;
    return sum / double(counted);
}

double hamming_loss(const LogicalLabelMatrix& pred, const LogicalLabelMatrix& truth) {
    if (pred.rows() == 0 || pred.rows() != truth.rows() || pred.cols() != truth.cols())
        throw ValidationError("hamming_loss: empty or mismatched inputs");
    double mism = (pred - truth).cwiseAbs().sum();
    return mism / (double(pred.rows()) * double(pred.cols()));
}

std::vector<int> score_ranks(const Eigen::VectorXd& scores) {
    std::vector<int> order(std::size_t(scores.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores(a) != scores(b)) return scores(a) > scores(b);
        return a < b;
    });
    std::vector<int> rank(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[std::size_t(order[pos])] = int(pos) + 1;
    return rank;
}

namespace {

void check_shapes(const ScoreMatrix& scores, const LogicalLabelMatrix& truth) {
    if (scores.rows() == 0 || scores.rows() != truth.rows() || scores.cols() != truth.cols())
        throw ValidationError("ranking metric: empty or mismatched inputs");
}

}  // namespace

RankingValue average_precision(const ScoreMatrix& scores, const LogicalLabelMatrix& truth) {
    check_shapes(scores, truth);
    RankingValue out;
    double sum = 0.0;
    Eigen::Index counted = 0;
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        std::vector<int> relevant;
        for (Eigen::Index l = 0; l < truth.cols(); ++l)
            if (truth(i, l) == 1.0) relevant.push_back(int(l));
        if (relevant.empty()) {
            ++out.skipped;
            continue;
        }
        auto rank = score_ranks(scores.row(i).transpose());
        double inst = 0.0;
        for (int l : relevant) {
            int better = 0;
            for (int lp : relevant)
                if (rank[std::size_t(lp)] <= rank[std::size_t(l)]) ++better;
            inst += double(better) / double(rank[std::size_t(l)]);
        }
        sum += inst / double(relevant.size());
        ++counted;
    }
    if (counted == 0) throw ValidationError("average_precision: every instance skipped");
    out.value = sum / double(counted);
    return out;
}

RankingValue one_error(const ScoreMatrix& scores, const LogicalLabelMatrix& truth) {
    check_shapes(scores, truth);
    RankingValue out;
    double errors = 0.0;
    Eigen::Index counted = 0;
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        if (truth.row(i).sum() == 0.0) {
            ++out.skipped;
            continue;
        }
        int top = 0;
        for (Eigen::Index l = 1; l < scores.cols(); ++l)
            if (scores(i, l) > scores(i, top)) top = int(l);
        if (truth(i, top) != 1.0) errors += 1.0;
        ++counted;
    }
    if (counted == 0) throw ValidationError("one_error: every instance skipped");
    out.value = errors / double(counted);
    return out;
}

RankingValue ranking_loss(const ScoreMatrix& scores, const LogicalLabelMatrix& truth) {
    check_shapes(scores, truth);
    RankingValue out;
    double sum = 0.0;
    Eigen::Index counted = 0;
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        double bad = 0.0;
        long n_rel = 0, n_irr = 0;
        for (Eigen::Index a = 0; a < truth.cols(); ++a) {
            if (truth(i, a) != 1.0) continue;
            ++n_rel;
            for (Eigen::Index b = 0; b < truth.cols(); ++b) {
                if (truth(i, b) == 1.0) continue;
                if (scores(i, a) <= scores(i, b)) bad += 1.0;  // ties count as errors
            }
        }
        for (Eigen::Index b = 0; b < truth.cols(); ++b)
            if (truth(i, b) != 1.0) ++n_irr;
        if (n_rel == 0 || n_irr == 0) {
            ++out.skipped;
            continue;
        }
        sum += bad / (double(n_rel) * double(n_irr));
        ++counted;
    }
    if (counted == 0) throw ValidationError("ranking_loss: every instance skipped");
    out.value = sum / double(counted);
    return out;
}

RankingValue coverage(const ScoreMatrix& scores, const LogicalLabelMatrix& truth) {
    check_shapes(scores, truth);
    RankingValue out;
    double sum = 0.0;
    Eigen::Index counted = 0;
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        if (truth.row(i).sum() == 0.0) {
            ++out.skipped;
            continue;
        }
        auto rank = score_ranks(scores.row(i).transpose());
        int worst = 0;
        for (Eigen::Index l = 0; l < truth.cols(); ++l)
            if (truth(i, l) == 1.0) worst = std::max(worst, rank[std::size_t(l)]);
        sum += double(worst - 1);
        ++counted;
    }
    if (counted == 0) throw ValidationError("coverage: every instance skipped");
    out.value = sum / double(counted);
    return out;
}

}  // namespace flel
