#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "flel/synthdata.hpp"

using namespace flel;

TEST_CASE("make_covariance is symmetric positive definite with the right scale") {
    Rng rng(123);
    Eigen::MatrixXd s = make_covariance(4, 0.5, 0.8, rng);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    // phi^2 (I + rho A) with ||A||_2 = 1: eigenvalues in [phi^2, phi^2 (1+rho)]
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(es.eigenvalues().minCoeff() >= 0.25 - 1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= 0.25 * 1.8 + 1e-12);
}

TEST_CASE("gen_single_label invariants") {
    SynthConfig cfg;
    cfg.n_total = 47;
    cfg.k_clusters = 3;
    cfg.dims = 4;
    cfg.seed = 7;
    Dataset ds = gen_single_label(cfg);

    CHECK(ds.n() == 47);
    CHECK(ds.labels() == 3);
    CHECK(ds.mode == LabelMode::single_label);
    REQUIRE(ds.fuzzy.has_value());

    // remainder goes to the earliest clusters: 16, 16, 15
    Eigen::VectorXd per_class = ds.logical.colwise().sum();
    CHECK(per_class(0) == 16.0);
    CHECK(per_class(1) == 16.0);
    CHECK(per_class(2) == 15.0);

    const auto& u = *ds.fuzzy;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        CHECK(ds.logical.row(i).sum() == 1.0);
        for (Eigen::Index k = 0; k < 3; ++k) {
            if (ds.logical(i, k) == 1.0) {
                CHECK(u(i, k) > 0.0);
                CHECK(u(i, k) <= 1.0);
            } else {
                CHECK(u(i, k) == 0.0);
            }
        }
    }
    // column rescaling puts each class's best sample at membership 1
    for (Eigen::Index k = 0; k < 3; ++k) CHECK(u.col(k).maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("gen_multi_label invariants") {
    SynthConfig cfg;
    cfg.n_total = 60;
    cfg.k_clusters = 4;
    cfg.dims = 3;
    cfg.noise_sigma = 0.5;
    cfg.alpha_offset = 0.1;
    cfg.seed = 11;
    Dataset ds = gen_multi_label(cfg);

    CHECK(ds.mode == LabelMode::multi_label);
    REQUIRE(ds.fuzzy.has_value());
    const auto& u = *ds.fuzzy;
    CHECK(u.minCoeff() >= 0.0);
    CHECK(u.maxCoeff() <= 1.0);
    CHECK(u.minCoeff() >= cfg.alpha_offset);  // offset floors every membership
    // logical labels are exactly the 0.5 threshold of the fuzzy matrix
    CHECK((ds.logical - fuzzy_to_logical(u, LabelMode::multi_label, 0.5))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("membership position switch changes labels, not determinism") {
    SynthConfig cfg;
    cfg.n_total = 40;
    cfg.k_clusters = 3;
    cfg.dims = 3;
    cfg.seed = 5;

    Dataset clean = gen_multi_label(cfg);
    cfg.membership_at_clean = false;
    Dataset noisy = gen_multi_label(cfg);
    // identical draw stream -> identical features, different memberships
    CHECK((clean.features - noisy.features).cwiseAbs().maxCoeff() == 0.0);
    CHECK((*clean.fuzzy - *noisy.fuzzy).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("generators are seed-deterministic and seed-sensitive") {
    SynthConfig cfg;
    cfg.n_total = 30;
    cfg.k_clusters = 2;
    cfg.dims = 2;
    cfg.seed = 99;
    Dataset a = gen_single_label(cfg);
    Dataset b = gen_single_label(cfg);
    CHECK((a.features - b.features).cwiseAbs().maxCoeff() == 0.0);
    CHECK((*a.fuzzy - *b.fuzzy).cwiseAbs().maxCoeff() == 0.0);

    cfg.seed = 100;
    Dataset c = gen_single_label(cfg);
    CHECK((a.features - c.features).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("config validation") {
    SynthConfig cfg;
    cfg.n_total = 2;
    cfg.k_clusters = 3;
    CHECK_THROWS_AS(cfg.validate(), PlanError);
    cfg = SynthConfig{};
    cfg.rho = 1.5;
    CHECK_THROWS_AS(cfg.validate(), PlanError);
    cfg = SynthConfig{};
    cfg.phi = 0.0;
    CHECK_THROWS_AS(cfg.validate(), PlanError);
}
