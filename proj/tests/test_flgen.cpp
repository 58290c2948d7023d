#include <doctest.h>

#include <random>

#include "flel/flgen.hpp"
#include "flel/synthdata.hpp"

using namespace flel;

namespace {

WeightGraph two_node_graph() {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    return build_propagation(w);
}

}  // namespace

TEST_CASE("propagate_step hand computation on the 2-node graph") {
    WeightGraph g = two_node_graph();  // P = [[0,1],[1,0]]
    LogicalLabelMatrix y = Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd u1 = propagate_step(g, y, y, 0.5);
    // U1 = 0.5 P Y + 0.5 Y = [[0.5,0.5],[0.5,0.5]]
    CHECK(u1(0, 0) == doctest::Approx(0.5));
    CHECK(u1(0, 1) == doctest::Approx(0.5));
    Eigen::MatrixXd u2 = propagate_step(g, u1, y, 0.5);
    // U2 = 0.5 P U1 + 0.5 Y = [[0.75,0.25],[0.25,0.75]]
    CHECK(u2(0, 0) == doctest::Approx(0.75));
    CHECK(u2(1, 0) == doctest::Approx(0.25));
}

TEST_CASE("2-node fixed point is (2/3, 1/3)") {
    WeightGraph g = two_node_graph();
    LogicalLabelMatrix y = Eigen::MatrixXd::Identity(2, 2);
    PropagationConfig cfg;
    cfg.alpha = 0.5;
    cfg.tol = 1e-12;
    cfg.max_iter = 10000;
    cfg.clip = false;
    FlgenResult r = propagate_to_fixed_point(g, y, cfg);
    CHECK(r.converged);
    CHECK(r.fuzzy(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(r.fuzzy(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    Eigen::MatrixXd oracle = fixed_point_oracle(g, y, 0.5);
    CHECK((r.fuzzy - oracle).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("iterative propagation matches the closed-form oracle on random graphs") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> size(3, 30);
    for (int trial = 0; trial < 25; ++trial) {
        int n = size(rng);
        int l = std::uniform_int_distribution<int>(2, 6)(rng);
        Eigen::MatrixXd w(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w(i, j) = i == j ? 0.0 : unif(rng);
        w = 0.5 * (w + w.transpose());
        WeightGraph g = build_propagation(w);
        LogicalLabelMatrix y = Eigen::MatrixXd::Zero(n, l);
        for (int i = 0; i < n; ++i) y(i, std::uniform_int_distribution<int>(0, l - 1)(rng)) = 1.0;

        double alpha = 0.1 + 0.8 * unif(rng);
        PropagationConfig cfg;
        cfg.alpha = alpha;
        cfg.tol = 1e-12;
        cfg.max_iter = 100000;
        cfg.clip = false;
        FlgenResult r = propagate_to_fixed_point(g, y, cfg);
        Eigen::MatrixXd oracle = fixed_point_oracle(g, y, alpha);
        CHECK(r.converged);
        CHECK((r.fuzzy - oracle).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("clip keeps the result in the unit interval") {
    WeightGraph g = two_node_graph();
    LogicalLabelMatrix y = Eigen::MatrixXd::Identity(2, 2);
    PropagationConfig cfg;
    cfg.clip = true;
    FlgenResult r = propagate_to_fixed_point(g, y, cfg);
    CHECK(r.fuzzy.minCoeff() >= 0.0);
    CHECK(r.fuzzy.maxCoeff() <= 1.0);
}

TEST_CASE("flgen_lp end-to-end produces valid fuzzy labels consistent with the oracle") {
    SynthConfig scfg;
    scfg.n_total = 60;
    scfg.k_clusters = 3;
    scfg.dims = 2;
    scfg.seed = 13;
    Dataset ds = gen_single_label(scfg);

    FcmConfig fcm;
    fcm.k = 3;
    fcm.seed = 2;
    GraphConfig gcfg;
    PropagationConfig pcfg;
    pcfg.alpha = 0.5;
    pcfg.tol = 1e-10;
    pcfg.max_iter = 50000;
    pcfg.clip = false;
    FlgenResult r = flgen_lp(ds.features, ds.logical, fcm, gcfg, pcfg);
    CHECK(r.converged);
    CHECK(r.fuzzy.rows() == 60);
    CHECK(r.fuzzy.cols() == 3);

    // rebuild the same graph and compare with the closed-form fixed point
    FcmResult clus = fcm_fit(ds.features, fcm);
    WeightGraph g = build_cluster_weighted_graph(ds.features, clus.membership, gcfg);
    Eigen::MatrixXd oracle = fixed_point_oracle(g, ds.logical, pcfg.alpha);
    CHECK((r.fuzzy - oracle).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(r.kernel_sigma == doctest::Approx(g.kernel_sigma));
}

TEST_CASE("propagation config validation") {
    PropagationConfig cfg;
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(cfg.validate(), PlanError);
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(cfg.validate(), PlanError);
    cfg = PropagationConfig{};
    cfg.max_iter = 0;
    CHECK_THROWS_AS(cfg.validate(), PlanError);
}
