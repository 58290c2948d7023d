#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "flel/dataset.hpp"
#include "flel/rng.hpp"

namespace flel {

struct SynthConfig {
    Eigen::Index n_total = 1500;
    int k_clusters = 3;
    Eigen::Index dims = 5;
    double phi = 0.25;         // covariance scaling factor
    double rho = 0.5;          // correlation weight in [0,1]
    double noise_sigma = 0.5;  // multi-label: noise std = kernel bandwidth
    double alpha_offset = 0.0; // multi-label membership offset
    // Evaluate the multi-label membership kernel at the pre-noise sample
    // position instead of the observed (noisy) one. Makes the true fuzzy
    // labels noisy relative to the features, which is what gives the
    // generated labels room to denoise.
    bool membership_at_clean = true;
    std::uint64_t seed = 0;

    void validate() const;
};

// phi^2 * (I + rho * A) with A a random symmetric PD matrix (B*B^T scaled to
// unit spectral norm). Symmetric positive definite for rho in [0,1].
Eigen::MatrixXd make_covariance(Eigen::Index dims, double phi, double rho, Rng& rng);

// Gaussian clusters with centers uniform in [0,1]^D; true fuzzy label is the
// reciprocal center distance for the own cluster (column-rescaled into (0,1]),
// zero elsewhere; logical labels one-hot by cluster.
Dataset gen_single_label(const SynthConfig& config);

// Same clusters, then additive N(0, sigma^2) noise per coordinate; fuzzy
// memberships exp(-d^2 / (2 sigma^2)) + alpha against every center, clamped
// to [0,1]; logical labels by thresholding the fuzzy labels at 0.5.
Dataset gen_multi_label(const SynthConfig& config);

}  // namespace flel
