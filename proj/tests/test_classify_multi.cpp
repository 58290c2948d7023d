#include <doctest.h>

#include <random>

#include "flel/classify_multi.hpp"

using namespace flel;

namespace {

struct Fixture {
    FeatureMatrix x;
    LogicalLabelMatrix y;
};

Fixture random_fixture(std::mt19937_64& rng, int n, int dims, int labels) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Fixture f;
    f.x.resize(n, dims);
    for (int i = 0; i < n; ++i)
        for (int d = 0; d < dims; ++d) f.x(i, d) = unif(rng);
    f.y.resize(n, labels);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < labels; ++l) f.y(i, l) = unif(rng) < 0.4 ? 1.0 : 0.0;
    return f;
}

}  // namespace

TEST_CASE("fit_priors uses the smoothed continuous column sums") {
    FuzzyLabelMatrix u(4, 2);
    u << 0.9, 0.1, 0.8, 0.3, 0.7, 0.2, 0.6, 0.0;
    Eigen::VectorXd p = fit_priors(u, 1.0);
    CHECK(p(0) == doctest::Approx((3.0 + 1.0) / (4.0 + 2.0)));
    CHECK(p(1) == doctest::Approx((0.6 + 1.0) / (4.0 + 2.0)));
    CHECK_THROWS_AS(fit_priors(u, 0.0), PlanError);
}

TEST_CASE("conditional_probabilities reproduce the worked examples") {
    // L=1, count=2, K=3, s=1 -> (1+2)/(1*4+2) = 0.5
    std::vector<std::pair<int, int>> counts = {{2, 1}};
    auto cond = conditional_probabilities(counts, 3, 1.0);
    CHECK(cond[0].first == doctest::Approx(0.5));
    CHECK(cond[0].second == doctest::Approx((1.0 + 1.0) / (1.0 * 4.0 + 1.0)));

    // all-zero counts -> s / (s (K+1)) = 1/(K+1)
    counts = {{0, 3}, {0, 3}};
    cond = conditional_probabilities(counts, 3, 0.5);
    CHECK(cond[0].first == doctest::Approx(1.0 / 4.0));

    // always strictly inside (0,1)
    counts = {{3, 0}, {0, 3}};
    cond = conditional_probabilities(counts, 3, 0.05);
    for (const auto& [pc, pcn] : cond) {
        CHECK(pc > 0.0);
        CHECK(pc < 1.0);
        CHECK(pcn > 0.0);
        CHECK(pcn < 1.0);
    }
}

TEST_CASE("neighborhood counts threshold the fuzzy values and sum to K") {
    FeatureMatrix x(4, 1);
    x << 0.0, 0.1, 0.2, 5.0;
    FuzzyLabelMatrix u(4, 2);
    u << 0.9, 0.5, 0.6, 0.2, 0.2, 0.51, 1.0, 1.0;
    MultiLabelConfig cfg;
    cfg.k_neighbors = 3;
    MultiLabelModel model(x, u, cfg);
    Eigen::VectorXd q(1);
    q << 0.0;
    auto counts = model.neighborhood_counts(q);
    // neighbors are rows 0,1,2; label 0: {0.9, 0.6, 0.2} -> 2 above 0.5
    CHECK(counts[0].first == 2);
    CHECK(counts[0].second == 1);
    // label 1: {0.5, 0.2, 0.51}; a value exactly at the threshold does NOT belong
    CHECK(counts[1].first == 1);
    CHECK(counts[1].second == 2);
    for (const auto& [c, cn] : counts) CHECK(c + cn == 3);
}

TEST_CASE("--as-printed flips the indicator directions") {
    FeatureMatrix x(3, 1);
    x << 0.0, 0.1, 0.2;
    FuzzyLabelMatrix u(3, 1);
    u << 0.9, 0.6, 0.2;
    MultiLabelConfig cfg;
    cfg.k_neighbors = 3;
    MultiLabelModel prose(x, u, cfg);
    cfg.as_printed = true;
    MultiLabelModel printed(x, u, cfg);
    Eigen::VectorXd q(1);
    q << 0.0;
    auto a = prose.neighborhood_counts(q);
    auto b = printed.neighborhood_counts(q);
    CHECK(a[0].first == 2);
    CHECK(b[0].first == 1);  // transposed reading counts the complement
}

TEST_CASE("posterior is monotone non-decreasing in the membership count") {
    // synthetic count sweep through predict paths: use 1-label fixtures where
    // the K neighbors have c members, for every c in 0..K
    const int k = 5;
    MultiLabelConfig cfg;
    cfg.k_neighbors = k;
    cfg.smoothing = 0.05;
    double prev = -1.0;
    for (int c = 0; c <= k; ++c) {
        FeatureMatrix x(k, 1);
        FuzzyLabelMatrix u(k, 1);
        for (int i = 0; i < k; ++i) {
            x(i, 0) = double(i) * 0.01;
            u(i, 0) = i < c ? 0.9 : 0.1;
        }
        MultiLabelModel model(x, u, cfg);
        Eigen::VectorXd q(1);
        q << 0.0;
        double post = model.predict_fuzzy(q)(0);
        CHECK(post > 0.0);
        CHECK(post < 1.0);
        // priors shift with c here, but the posterior must still increase
        CHECK(post > prev);
        prev = post;
    }
}

TEST_CASE("predict_logical keeps labels at the threshold boundary") {
    FeatureMatrix x(2, 1);
    x << 0.0, 1.0;
    FuzzyLabelMatrix u(2, 2);
    u << 0.9, 0.1, 0.9, 0.1;
    MultiLabelConfig cfg;
    cfg.k_neighbors = 2;
    MultiLabelModel model(x, u, cfg);
    Eigen::VectorXd q(1);
    q << 0.5;
    Eigen::VectorXd p = model.predict_fuzzy(q);
    Eigen::VectorXd dec = model.predict_logical(q);
    for (Eigen::Index l = 0; l < 2; ++l)
        CHECK(dec(l) == (p(l) >= cfg.threshold ? 1.0 : 0.0));
}

TEST_CASE("feeding U = Y is bitwise-identical to the baseline arm") {
    std::mt19937_64 rng(301);
    Fixture f = random_fixture(rng, 35, 3, 4);
    MultiLabelConfig cfg;
    cfg.k_neighbors = 7;
    MultiLabelModel fuzzy_model(f.x, f.y, cfg);
    MultiLabelModel baseline = fit_baseline_mlknn(f.x, f.y, cfg);

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        Eigen::VectorXd q(3);
        for (int d = 0; d < 3; ++d) q(d) = unif(rng);
        Eigen::VectorXd a = fuzzy_model.predict_fuzzy(q);
        Eigen::VectorXd b = baseline.predict_fuzzy(q);
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);  // bitwise identical
    }
}

TEST_CASE("classic conditioning changes the posterior but keeps it valid") {
    std::mt19937_64 rng(99);
    Fixture f = random_fixture(rng, 40, 2, 3);
    MultiLabelConfig cfg;
    cfg.k_neighbors = 5;
    MultiLabelModel variant(f.x, f.y, cfg);
    cfg.classic = true;
    MultiLabelModel classic(f.x, f.y, cfg);
    Eigen::VectorXd q(2);
    q << 0.5, 0.5;
    Eigen::VectorXd a = variant.predict_fuzzy(q);
    Eigen::VectorXd b = classic.predict_fuzzy(q);
    CHECK(b.minCoeff() > 0.0);
    CHECK(b.maxCoeff() < 1.0);
    CHECK((a - b).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("multi-label model validation") {
    FeatureMatrix x(3, 1);
    x << 0, 1, 2;
    FuzzyLabelMatrix u = FuzzyLabelMatrix::Constant(3, 2, 0.5);
    MultiLabelConfig cfg;
    cfg.k_neighbors = 4;
    CHECK_THROWS_AS(MultiLabelModel(x, u, cfg), PlanError);
    cfg.k_neighbors = 2;
    cfg.threshold = 1.0;
    CHECK_THROWS_AS(MultiLabelModel(x, u, cfg), PlanError);
    cfg = MultiLabelConfig{};
    cfg.k_neighbors = 2;
    LogicalLabelMatrix bad(3, 2);
    bad << 1, 0, 0.5, 1, 0, 0;
    CHECK_THROWS_AS(fit_baseline_mlknn(x, bad, cfg), ValidationError);
}
