#include "flel/flgen.hpp"

#include <Eigen/LU>

namespace flel {

void PropagationConfig::validate() const {
    if (alpha <= 0.0 || alpha >= 1.0) throw PlanError("alpha must lie in (0,1)");
    if (tol <= 0.0) throw PlanError("tol must be > 0");
    if (max_iter < 1) throw PlanError("max_iter must be >= 1");
}

Eigen::MatrixXd propagate_step(const WeightGraph& graph, const Eigen::MatrixXd& u_prev,
                               const LogicalLabelMatrix& y, double alpha) {
    if (u_prev.rows() != graph.propagation.rows() || u_prev.rows() != y.rows() ||
        u_prev.cols() != y.cols())
        throw ValidationError("propagate_step: shape mismatch");
    return alpha * (graph.propagation * u_prev) + (1.0 - alpha) * y;
}

FlgenResult propagate_to_fixed_point(const WeightGraph& graph, const LogicalLabelMatrix& y,
                                     const PropagationConfig& cfg) {
    cfg.validate();
    FlgenResult res;
    res.kernel_sigma = graph.kernel_sigma;
    Eigen::MatrixXd u = y;
    for (int it = 0; it < cfg.max_iter; ++it) {
        Eigen::MatrixXd next = propagate_step(graph, u, y, cfg.alpha);
        double change = (next - u).cwiseAbs().maxCoeff();
        u = std::move(next);
        res.iterations = it + 1;
        if (change < cfg.tol) {
            res.converged = true;
            break;
        }
    }
    if (cfg.clip) u = u.cwiseMax(0.0).cwiseMin(1.0);
    res.fuzzy = std::move(u);
    return res;
}

FlgenResult flgen_lp(const FeatureMatrix& features, const LogicalLabelMatrix& logical,
                     const FcmConfig& fcm_cfg, const GraphConfig& graph_cfg,
                     const PropagationConfig& prop_cfg) {
    if (features.rows() != logical.rows()) throw ValidationError("flgen_lp: row count mismatch");
    FcmResult fcm = fcm_fit(features, fcm_cfg);
    WeightGraph graph = build_cluster_weighted_graph(features, fcm.membership, graph_cfg);
    return propagate_to_fixed_point(graph, logical, prop_cfg);
}

Eigen::MatrixXd fixed_point_oracle(const WeightGraph& graph, const LogicalLabelMatrix& y,
                                   double alpha) {
    const Eigen::Index n = graph.propagation.rows();
    if (y.rows() != n) throw ValidationError("fixed_point_oracle: shape mismatch");
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - alpha * graph.propagation;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    if (std::abs(lu.determinant()) < 1e-300)
        throw ValidationError("fixed_point_oracle: singular system");
    return lu.solve((1.0 - alpha) * y);
}

}  // namespace flel
