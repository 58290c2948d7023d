#include <doctest.h>

#include <random>

#include "flel/metrics.hpp"

using namespace flel;

namespace {

// Brute-force references written directly from the metric definitions,
// independent of the library's rank helper.

int ref_rank(const Eigen::VectorXd& s, int l) {
    // 1 + number of labels strictly better; ties broken toward lower index
    int r = 1;
    for (int j = 0; j < s.size(); ++j) {
        if (j == l) continue;
        if (s(j) > s(l) || (s(j) == s(l) && j < l)) ++r;
    }
    return r;
}

double ref_ap_instance(const Eigen::VectorXd& s, const Eigen::VectorXd& y) {
    std::vector<int> rel;
    for (int l = 0; l < y.size(); ++l)
        if (y(l) == 1.0) rel.push_back(l);
    double acc = 0.0;
    for (int l : rel) {
        int rl = ref_rank(s, l);
        int within = 0;
        for (int lp : rel)
            if (ref_rank(s, lp) <= rl) ++within;
        acc += double(within) / double(rl);
    }
    return acc / double(rel.size());
}

struct Fix {
    ScoreMatrix s;
    LogicalLabelMatrix y;
};

Fix random_fix(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nd(1, 20), ld(2, 8);
    int n = nd(rng), l = ld(rng);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // quantized scores make ties common
    Fix f;
    f.s.resize(n, l);
    f.y.resize(n, l);
    bool any_rel = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < l; ++j) {
            f.s(i, j) = std::floor(unif(rng) * 5.0) / 5.0;
            f.y(i, j) = unif(rng) < 0.45 ? 1.0 : 0.0;
            if (f.y(i, j) == 1.0) any_rel = true;
        }
    if (!any_rel) f.y(0, 0) = 1.0;  // keep at least one instance countable
    return f;
}

}  // namespace

TEST_CASE("accuracy and f1 hand values") {
    std::vector<int> pred = {0, 1, 1, 0};
    std::vector<int> truth = {0, 1, 0, 1};
    CHECK(accuracy(pred, truth) == doctest::Approx(0.5));
    // binary F1 on class 1: tp=1, fp=1, fn=1 -> 0.5
    CHECK(f1(pred, truth, 2, F1Averaging::binary) == doctest::Approx(0.5));
    // macro: class 0 same by symmetry -> 0.5
    CHECK(f1(pred, truth, 2, F1Averaging::macro) == doctest::Approx(0.5));

    std::vector<int> no_pos_pred = {0, 0};
    std::vector<int> no_pos_truth = {0, 0};
    CHECK(f1(no_pos_pred, no_pos_truth, 2, F1Averaging::binary) == 0.0);
}

TEST_CASE("roc_auc hand values with ties at one half") {
    Eigen::VectorXd s(4);
    s << 0.9, 0.4, 0.4, 0.1;
    std::vector<int> t = {1, 1, 0, 0};
    // pairs: (0.9,0.4)=1, (0.9,0.1)=1, (0.4,0.4)=0.5, (0.4,0.1)=1 -> 3.5/4
    CHECK(*roc_auc(s, t) == doctest::Approx(0.875));

    std::vector<int> single = {1, 1, 1, 1};
    CHECK(!roc_auc(s, single).has_value());
}

TEST_CASE("roc_auc_macro skips absent classes") {
    ScoreMatrix s(3, 3);
    s << 0.7, 0.2, 0.1, 0.1, 0.8, 0.1, 0.2, 0.3, 0.5;
    std::vector<int> truth = {0, 1, 1};  // class 2 never appears
    auto auc = roc_auc_macro(s, truth, 3);
    REQUIRE(auc.has_value());
    double c0 = *roc_auc(s.col(0), std::vector<int>{1, 0, 0});
    double c1 = *roc_auc(s.col(1), std::vector<int>{0, 1, 1});
    CHECK(*auc == doctest::Approx((c0 + c1) / 2.0));
}

TEST_CASE("hamming_loss definition") {
    LogicalLabelMatrix p(2, 3), t(2, 3);
    p << 1, 0, 1, 0, 0, 1;
    t << 1, 1, 0, 0, 0, 1;
    CHECK(hamming_loss(p, t) == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("ranking metric edge cases anchored to the definitions") {
    // RL: a tie between a relevant and an irrelevant score counts as an error
    ScoreMatrix s(1, 2);
    s << 0.5, 0.5;
    LogicalLabelMatrix y(1, 2);
    y << 1, 0;
    CHECK(ranking_loss(s, y).value == 1.0);

    // coverage boundary: relevant label ranked last
    ScoreMatrix s2(1, 3);
    s2 << 0.9, 0.5, 0.1;
    LogicalLabelMatrix y2(1, 3);
    y2 << 0, 0, 1;
    CHECK(coverage(s2, y2).value == 2.0);

    // one-error top-tie resolves to the lower index (via strict > scan)
    ScoreMatrix s3(1, 2);
    s3 << 0.7, 0.7;
    LogicalLabelMatrix y3(1, 2);
    y3 << 0, 1;
    CHECK(one_error(s3, y3).value == 1.0);
    LogicalLabelMatrix y4(1, 2);
    y4 << 1, 0;
    CHECK(one_error(s3, y4).value == 0.0);
}

TEST_CASE("ranking metrics skip empty-relevant instances and report the count") {
    ScoreMatrix s(2, 2);
    s << 0.9, 0.1, 0.2, 0.8;
    LogicalLabelMatrix y(2, 2);
    y << 0, 0, 1, 0;
    auto ap = average_precision(s, y);
    CHECK(ap.skipped == 1);
    auto cov = coverage(s, y);
    CHECK(cov.skipped == 1);
    // all-relevant rows are skipped by RL (no irrelevant partner)
    LogicalLabelMatrix y2(2, 2);
    y2 << 1, 1, 1, 0;
    CHECK(ranking_loss(s, y2).skipped == 1);
    LogicalLabelMatrix none = LogicalLabelMatrix::Zero(2, 2);
    CHECK_THROWS_AS(average_precision(s, none), ValidationError);
}

TEST_CASE("brute-force agreement on 200 random fixtures") {
    std::mt19937_64 rng(515);
    for (int trial = 0; trial < 200; ++trial) {
        Fix f = random_fix(rng);
        const int n = int(f.s.rows()), l = int(f.s.cols());

        // average precision
        double ap_sum = 0.0;
        int ap_n = 0;
        for (int i = 0; i < n; ++i) {
            if (f.y.row(i).sum() == 0.0) continue;
            ap_sum += ref_ap_instance(f.s.row(i).transpose(), f.y.row(i).transpose());
            ++ap_n;
        }
        if (ap_n > 0)
            CHECK(average_precision(f.s, f.y).value == doctest::Approx(ap_sum / ap_n).epsilon(1e-12));

        // one error
        double oe = 0.0;
        int oe_n = 0;
        for (int i = 0; i < n; ++i) {
            if (f.y.row(i).sum() == 0.0) continue;
            int top = 0;
            for (int j = 1; j < l; ++j)
                if (f.s(i, j) > f.s(i, top)) top = j;
            oe += f.y(i, top) == 1.0 ? 0.0 : 1.0;
            ++oe_n;
        }
        if (oe_n > 0) CHECK(one_error(f.s, f.y).value == doctest::Approx(oe / oe_n).epsilon(1e-12));

        // ranking loss with ties as errors
        double rl = 0.0;
        int rl_n = 0;
        for (int i = 0; i < n; ++i) {
            long nr = long(f.y.row(i).sum());
            long ni = l - nr;
            if (nr == 0 || ni == 0) continue;
            double bad = 0;
            for (int a = 0; a < l; ++a)
                for (int b = 0; b < l; ++b)
                    if (f.y(i, a) == 1.0 && f.y(i, b) == 0.0 && f.s(i, a) <= f.s(i, b)) bad += 1.0;
            rl += bad / double(nr * ni);
            ++rl_n;
        }
        if (rl_n > 0)
            CHECK(ranking_loss(f.s, f.y).value == doctest::Approx(rl / rl_n).epsilon(1e-12));

        // coverage
        double cov = 0.0;
        int cov_n = 0;
        for (int i = 0; i < n; ++i) {
            if (f.y.row(i).sum() == 0.0) continue;
            int worst = 0;
            for (int j = 0; j < l; ++j)
                if (f.y(i, j) == 1.0) worst = std::max(worst, ref_rank(f.s.row(i).transpose(), j));
            cov += worst - 1;
            ++cov_n;
        }
        if (cov_n > 0)
            CHECK(coverage(f.s, f.y).value == doctest::Approx(cov / cov_n).epsilon(1e-12));

        // hamming loss against a random prediction
        LogicalLabelMatrix pred(n, l);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < l; ++j) pred(i, j) = unif(rng) < 0.5 ? 1.0 : 0.0;
        double mism = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < l; ++j) mism += pred(i, j) != f.y(i, j) ? 1.0 : 0.0;
        CHECK(hamming_loss(pred, f.y) == doctest::Approx(mism / (n * l)).epsilon(1e-12));
    }
}

TEST_CASE("score_ranks is a permutation with tie-break toward lower index") {
    Eigen::VectorXd s(4);
    s << 0.3, 0.9, 0.3, 0.1;
    auto r = score_ranks(s);
    CHECK(r == std::vector<int>({2, 1, 3, 4}));
}
