#include "flel/synthdata.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace flel {

void SynthConfig::validate() const {
    if (n_total < k_clusters || k_clusters < 1) throw PlanError("need n_total >= k_clusters >= 1");
    if (dims < 1) throw PlanError("dims must be >= 1");
    if (phi <= 0.0) throw PlanError("phi must be > 0");
    if (rho < 0.0 || rho > 1.0) throw PlanError("rho must lie in [0,1]");
    if (noise_sigma < 0.0) throw PlanError("noise_sigma must be >= 0");
}

Eigen::MatrixXd make_covariance(Eigen::Index dims, double phi, double rho, Rng& rng) {
    if (dims < 1) throw PlanError("dims must be >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd b(dims, dims);
    for (Eigen::Index i = 0; i < dims; ++i)
        for (Eigen::Index j = 0; j < dims; ++j) b(i, j) = gauss(rng);
    Eigen::MatrixXd a = b * b.transpose();
    double spectral = a.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff();
    if (spectral > 0.0) a /= spectral;
    return phi * phi *
           (Eigen::MatrixXd::Identity(dims, dims) + rho * a);
}

namespace {

struct ClusterLayout {
    Eigen::MatrixXd centers;                 // K x D, uniform in [0,1]^D
    std::vector<Eigen::MatrixXd> chol;       // per-cluster Cholesky factor
    std::vector<Eigen::Index> counts;        // equal split, remainder to earliest
};

ClusterLayout draw_clusters(const SynthConfig& cfg, Rng& rng) {
    ClusterLayout layout;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    layout.centers.resize(cfg.k_clusters, cfg.dims);
    for (Eigen::Index k = 0; k < cfg.k_clusters; ++k)
        for (Eigen::Index d = 0; d < cfg.dims; ++d) layout.centers(k, d) = unif(rng);
    for (int k = 0; k < cfg.k_clusters; ++k) {
        Eigen::MatrixXd sigma = make_covariance(cfg.dims, cfg.phi, cfg.rho, rng);
        layout.chol.push_back(Eigen::LLT<Eigen::MatrixXd>(sigma).matrixL());
    }
    Eigen::Index base = cfg.n_total / cfg.k_clusters;
    Eigen::Index rem = cfg.n_total % cfg.k_clusters;
    for (int k = 0; k < cfg.k_clusters; ++k)
        layout.counts.push_back(base + (k < rem ? 1 : 0));
    return layout;
}

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& chol, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd z(mean.size());
    for (Eigen::Index d = 0; d < z.size(); ++d) z(d) = gauss(rng);
    return mean + chol * z;
}

}  // namespace

Dataset gen_single_label(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(mix_seed(cfg.seed));
    ClusterLayout layout = draw_clusters(cfg, rng);

    Dataset ds;
    ds.mode = LabelMode::single_label;
    ds.name = "synthetic_single";
    ds.features.resize(cfg.n_total, cfg.dims);
    ds.logical = LogicalLabelMatrix::Zero(cfg.n_total, cfg.k_clusters);
    FuzzyLabelMatrix raw = FuzzyLabelMatrix::Zero(cfg.n_total, cfg.k_clusters);

    Eigen::Index row = 0;
    for (int k = 0; k < cfg.k_clusters; ++k) {
        Eigen::VectorXd center = layout.centers.row(k).transpose();
        for (Eigen::Index i = 0; i < layout.counts[std::size_t(k)]; ++i, ++row) {
            Eigen::VectorXd x = sample_mvn(center, layout.chol[std::size_t(k)], rng);
            ds.features.row(row) = x.transpose();
            ds.logical(row, k) = 1.0;
            double d = (x - center).norm();
            raw(row, k) = d > 0.0 ? 1.0 / d : std::numeric_limits<double>::infinity();
        }
    }

    // Raw reciprocal memberships are unbounded; rescale each class column by
    // its own maximum so the nonzero entries land in (0,1]. A sample that
    // coincides with its center caps at 1.
    FuzzyLabelMatrix fuzzy = raw;
    for (Eigen::Index k = 0; k < fuzzy.cols(); ++k) {
        double cap = 0.0;
        bool has_inf = false;
        for (Eigen::Index i = 0; i < fuzzy.rows(); ++i) {
            if (std::isinf(raw(i, k)))
                has_inf = true;
            else
                cap = std::max(cap, raw(i, k));
        }
        for (Eigen::Index i = 0; i < fuzzy.rows(); ++i) {
            if (std::isinf(raw(i, k)))
                fuzzy(i, k) = 1.0;
            else if (raw(i, k) > 0.0)
                fuzzy(i, k) = has_inf || cap == 0.0 ? std::min(raw(i, k), 1.0) : raw(i, k) / cap;
        }
    }
    ds.fuzzy = fuzzy;
    for (int k = 0; k < cfg.k_clusters; ++k) ds.class_names.push_back("c" + std::to_string(k));
    validate_dataset(ds);
    return ds;
}

Dataset gen_multi_label(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(mix_seed(cfg.seed));
    ClusterLayout layout = draw_clusters(cfg, rng);

    Dataset ds;
    ds.mode = LabelMode::multi_label;
    ds.name = "synthetic_multi";
    ds.features.resize(cfg.n_total, cfg.dims);
    FuzzyLabelMatrix fuzzy(cfg.n_total, cfg.k_clusters);
    std::normal_distribution<double> noise(0.0, cfg.noise_sigma);

    const double denom = 2.0 * cfg.noise_sigma * cfg.noise_sigma;
    Eigen::Index row = 0;
    for (int k = 0; k < cfg.k_clusters; ++k) {
        Eigen::VectorXd center = layout.centers.row(k).transpose();
        for (Eigen::Index i = 0; i < layout.counts[std::size_t(k)]; ++i, ++row) {
            Eigen::VectorXd x = sample_mvn(center, layout.chol[std::size_t(k)], rng);
            Eigen::VectorXd noisy = x;
            for (Eigen::Index d = 0; d < cfg.dims; ++d) noisy(d) += noise(rng);
            ds.features.row(row) = noisy.transpose();
            const Eigen::VectorXd& at = cfg.membership_at_clean ? x : noisy;
            for (Eigen::Index j = 0; j < cfg.k_clusters; ++j) {
                double d2 = (at - layout.centers.row(j).transpose()).squaredNorm();
                double u = (denom > 0.0 ? std::exp(-d2 / denom) : (d2 == 0.0 ? 1.0 : 0.0)) +
                           cfg.alpha_offset;
                fuzzy(row, j) = std::clamp(u, 0.0, 1.0);
            }
        }
    }
    ds.fuzzy = fuzzy;
    ds.logical = fuzzy_to_logical(fuzzy, LabelMode::multi_label, 0.5);
    validate_dataset(ds);
    return ds;
}

}  // namespace flel
