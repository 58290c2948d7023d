#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "flel/dataset.hpp"
#include "flel/rng.hpp"

namespace flel {

struct FcmConfig {
    int k = 2;
    double fuzzifier = 2.0;
    double tol = 1e-5;
    int max_iter = 300;
    std::uint64_t seed = 0;
};

struct FcmResult {
    Eigen::MatrixXd centers;     // K x D
    Eigen::MatrixXd membership;  // N x K, rows sum to 1
    int iterations = 0;
    double final_objective = 0.0;
    std::vector<double> objective_trace;  // objective after each center/membership update
};

// Standard FCM alternating optimization. Membership init is a seeded random
// row-normalized matrix; a point coincident with a center gets a crisp row.
FcmResult fcm_fit(const FeatureMatrix& features, const FcmConfig& cfg);

// Per-row argmax cluster index, ties to lowest index.
std::vector<int> dominant_cluster(const Eigen::MatrixXd& membership);

}  // namespace flel
