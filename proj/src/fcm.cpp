#include "flel/fcm.hpp"

#include <cmath>
#include <limits>

namespace flel {

namespace {

Eigen::MatrixXd squared_distances(const FeatureMatrix& x, const Eigen::MatrixXd& centers) {
    Eigen::VectorXd xn = x.rowwise().squaredNorm();
    Eigen::VectorXd cn = centers.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = -2.0 * x * centers.transpose();
    d2.colwise() += xn;
    d2.rowwise() += cn.transpose();
    return d2.cwiseMax(0.0);
}

// u_ik = 1 / sum_j (d_ik / d_jk)^(1/(m-1)) on squared distances; crisp row
// when the point coincides with a center.
void update_membership(const Eigen::MatrixXd& d2, double fuzzifier, Eigen::MatrixXd& u) {
    const double expo = 1.0 / (fuzzifier - 1.0);
    for (Eigen::Index i = 0; i < d2.rows(); ++i) {
        int coincident = -1;
        for (Eigen::Index k = 0; k < d2.cols(); ++k)
            if (d2(i, k) == 0.0) {
                coincident = int(k);
                break;
            }
        if (coincident >= 0) {
            u.row(i).setZero();
            u(i, coincident) = 1.0;
            continue;
        }
        double sum = 0.0;
        for (Eigen::Index k = 0; k < d2.cols(); ++k) {
            u(i, k) = std::pow(1.0 / d2(i, k), expo);
            sum += u(i, k);
        }
        u.row(i) /= sum;
    }
}

}  // namespace

FcmResult fcm_fit(const FeatureMatrix& features, const FcmConfig& cfg) {
    const Eigen::Index n = features.rows();
    if (n == 0 || features.cols() == 0) throw ValidationError("fcm_fit: empty feature matrix");
    if (cfg.k < 1) throw PlanError("fcm_fit: k must be >= 1");
    if (Eigen::Index(cfg.k) > n) throw PlanError("fcm_fit: k exceeds instance count");
    if (cfg.fuzzifier <= 1.0) throw PlanError("fcm_fit: fuzzifier must be > 1");

    FcmResult res;
    res.membership.resize(n, cfg.k);
    if (cfg.k == 1) {
        res.membership.setOnes();
        res.centers = features.colwise().mean();
        res.iterations = 1;
        res.final_objective = squared_distances(features, res.centers).sum();
        res.objective_trace.push_back(res.final_objective);
        return res;
    }

    Rng rng(mix_seed(cfg.seed));
    std::uniform_real_distribution<double> unif(1e-3, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int k = 0; k < cfg.k; ++k) {
            res.membership(i, k) = unif(rng);
            sum += res.membership(i, k);
        }
        res.membership.row(i) /= sum;
    }

    Eigen::MatrixXd prev = res.membership;
    for (int it = 0; it < cfg.max_iter; ++it) {
        Eigen::MatrixXd um = res.membership.array().pow(cfg.fuzzifier);
        Eigen::VectorXd col_mass = um.colwise().sum();
        res.centers = (um.transpose() * features).array().colwise() / col_mass.array();

        Eigen::MatrixXd d2 = squared_distances(features, res.centers);
        update_membership(d2, cfg.fuzzifier, res.membership);

        res.final_objective =
            (res.membership.array().pow(cfg.fuzzifier) * d2.array()).sum();
        res.objective_trace.push_back(res.final_objective);
        res.iterations = it + 1;

        double change = (res.membership - prev).cwiseAbs().maxCoeff();
        prev = res.membership;
        if (change < cfg.tol) break;
    }
    return res;
}

std::vector<int> dominant_cluster(const Eigen::MatrixXd& membership) {
    return row_argmax(membership);
}

}  // namespace flel
