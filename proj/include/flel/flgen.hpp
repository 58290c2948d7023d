#pragma once

#include <Eigen/Dense>

#include "flel/dataset.hpp"
#include "flel/fcm.hpp"
#include "flel/graph.hpp"

namespace flel {

struct PropagationConfig {
    double alpha = 0.5;  // must lie in (0,1)
    double tol = 1e-6;
    int max_iter = 1000;
    bool clip = true;  // clamp the converged matrix into [0,1]

    void validate() const;
};

struct FlgenResult {
    FuzzyLabelMatrix fuzzy;
    int iterations = 0;
    bool converged = false;
    double kernel_sigma = 0.0;
};

// One application of U <- alpha * P * U_prev + (1 - alpha) * Y.
Eigen::MatrixXd propagate_step(const WeightGraph& graph, const Eigen::MatrixXd& u_prev,
                               const LogicalLabelMatrix& y, double alpha);

// Iterates propagate_step from U^(0) = Y until the max-norm change drops
// below tol or max_iter is reached.
FlgenResult propagate_to_fixed_point(const WeightGraph& graph, const LogicalLabelMatrix& y,
                                     const PropagationConfig& cfg);

// FL-Gen-LP: FCM clustering, cluster-weighted similarity graph, then
// iterative propagation of the dataset's logical labels.
FlgenResult flgen_lp(const FeatureMatrix& features, const LogicalLabelMatrix& logical,
                     const FcmConfig& fcm_cfg, const GraphConfig& graph_cfg,
                     const PropagationConfig& prop_cfg);

// Closed-form fixed point U* = (1 - alpha) (I - alpha P)^{-1} Y via a dense
// solve; test oracle for the iterative path.
Eigen::MatrixXd fixed_point_oracle(const WeightGraph& graph, const LogicalLabelMatrix& y,
                                   double alpha);

}  // namespace flel
