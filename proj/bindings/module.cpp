#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "flel/classify_multi.hpp"
#include "flel/classify_single.hpp"
#include "flel/dataset.hpp"
#include "flel/errors.hpp"
#include "flel/fcm.hpp"
#include "flel/flgen.hpp"
#include "flel/graph.hpp"
#include "flel/metrics.hpp"
#include "flel/synthdata.hpp"

namespace py = pybind11;
using namespace flel;

namespace {

FcmConfig make_fcm_config(int k, double fuzzifier, double tol, int max_iter, std::uint64_t seed) {
    FcmConfig cfg;
    cfg.k = k;
    cfg.fuzzifier = fuzzifier;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.seed = seed;
    return cfg;
}

GraphConfig make_graph_config(std::optional<double> kernel_sigma, int knn, bool symmetrize,
                              bool row_stochastic) {
    GraphConfig cfg;
    cfg.kernel_sigma = kernel_sigma;
    cfg.knn = knn;
    cfg.symmetrize = symmetrize;
    cfg.normalization =
        row_stochastic ? GraphNormalization::row_stochastic : GraphNormalization::symmetric;
    return cfg;
}

PropagationConfig make_prop_config(double alpha, double tol, int max_iter, bool clip) {
    PropagationConfig cfg;
    cfg.alpha = alpha;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.clip = clip;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fuzzy label generation and fuzzy-label-enhanced KNN classifiers";

    py::register_exception<PlanError>(m, "PlanError");
    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<ValidationError>(m, "ValidationError");

    // ---- synthetic data --------------------------------------------------
    py::class_<Dataset>(m, "Dataset")
        .def_readonly("features", &Dataset::features)
        .def_readonly("logical", &Dataset::logical)
        .def_property_readonly("fuzzy",
                               [](const Dataset& d) -> std::optional<FuzzyLabelMatrix> {
                                   return d.fuzzy;
                               })
        .def_property_readonly("mode", [](const Dataset& d) { return to_string(d.mode); })
        .def_readonly("name", &Dataset::name)
        .def_readonly("class_names", &Dataset::class_names)
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("dims", &Dataset::dims)
        .def_property_readonly("labels", &Dataset::labels);

    auto synth_cfg = [](Eigen::Index n, int clusters, Eigen::Index dims, double phi, double rho,
                        double noise_sigma, double alpha_offset, bool membership_at_clean,
                        std::uint64_t seed) {
        SynthConfig cfg;
        cfg.n_total = n;
        cfg.k_clusters = clusters;
        cfg.dims = dims;
        cfg.phi = phi;
        cfg.rho = rho;
        cfg.noise_sigma = noise_sigma;
        cfg.alpha_offset = alpha_offset;
        cfg.membership_at_clean = membership_at_clean;
        cfg.seed = seed;
        return cfg;
    };
    m.def(
        "gen_single_label",
        [synth_cfg](Eigen::Index n, int clusters, Eigen::Index dims, double phi, double rho,
                    std::uint64_t seed) {
            return gen_single_label(synth_cfg(n, clusters, dims, phi, rho, 0.5, 0.0, true, seed));
        },
        py::arg("n") = 1500, py::arg("clusters") = 3, py::arg("dims") = 5, py::arg("phi") = 0.25,
        py::arg("rho") = 0.5, py::arg("seed") = 0,
        "Gaussian-cluster single-label dataset with reciprocal-distance fuzzy labels");
    m.def(
        "gen_multi_label",
        [synth_cfg](Eigen::Index n, int clusters, Eigen::Index dims, double phi, double rho,
                    double noise_sigma, double alpha_offset, bool membership_at_clean,
                    std::uint64_t seed) {
            return gen_multi_label(synth_cfg(n, clusters, dims, phi, rho, noise_sigma,
                                             alpha_offset, membership_at_clean, seed));
        },
        py::arg("n") = 1500, py::arg("clusters") = 3, py::arg("dims") = 5, py::arg("phi") = 0.25,
        py::arg("rho") = 0.5, py::arg("noise_sigma") = 0.5, py::arg("alpha_offset") = 0.0,
        py::arg("membership_at_clean") = true, py::arg("seed") = 0,
        "Overlapping-cluster multi-label dataset with kernel-membership fuzzy labels");

    // ---- label generation ------------------------------------------------
    m.def(
        "generate_labels",
        [](const FeatureMatrix& features, const LogicalLabelMatrix& logical, int fcm_k,
           double fcm_m, std::uint64_t fcm_seed, std::optional<double> kernel_sigma, int knn,
           double alpha, double tol, int max_iter) {
            FcmConfig fcm = make_fcm_config(fcm_k > 0 ? fcm_k : int(logical.cols()), fcm_m, 1e-5,
                                            300, fcm_seed);
            GraphConfig graph = make_graph_config(kernel_sigma, knn, true, false);
            PropagationConfig prop = make_prop_config(alpha, tol, max_iter, true);
            FlgenResult res = flgen_lp(features, logical, fcm, graph, prop);
            return py::make_tuple(res.fuzzy, res.iterations, res.converged, res.kernel_sigma);
        },
        py::arg("features"), py::arg("logical"), py::arg("fcm_k") = 0, py::arg("fcm_m") = 2.0,
        py::arg("fcm_seed") = 0, py::arg("kernel_sigma") = std::nullopt, py::arg("knn") = 0,
        py::arg("alpha") = 0.5, py::arg("tol") = 1e-6, py::arg("max_iter") = 1000,
        "FL-Gen-LP: returns (fuzzy, iterations, converged, kernel_sigma)");

    m.def(
        "fcm",
        [](const FeatureMatrix& features, int k, double fuzzifier, double tol, int max_iter,
           std::uint64_t seed) {
            FcmResult res = fcm_fit(features, make_fcm_config(k, fuzzifier, tol, max_iter, seed));
            return py::make_tuple(res.centers, res.membership, res.iterations,
                                  res.final_objective);
        },
        py::arg("features"), py::arg("k"), py::arg("fuzzifier") = 2.0, py::arg("tol") = 1e-5,
        py::arg("max_iter") = 300, py::arg("seed") = 0,
        "Fuzzy c-means: returns (centers, membership, iterations, objective)");

    // ---- classifiers -----------------------------------------------------
    py::class_<SingleLabelModel>(m, "SingleLabelModel")
        .def(py::init<FeatureMatrix, FuzzyLabelMatrix, int, double>(), py::arg("features"),
             py::arg("fuzzy"), py::arg("k"), py::arg("epsilon") = 1e-10)
        .def("predict_fuzzy", &SingleLabelModel::predict_fuzzy, py::arg("query"))
        .def("predict_class", &SingleLabelModel::predict_class, py::arg("query"))
        .def("predict_majority", &SingleLabelModel::predict_majority, py::arg("query"))
        .def_property_readonly("k", &SingleLabelModel::k_neighbors)
        .def_property_readonly("classes", &SingleLabelModel::class_count);

    py::class_<MultiLabelModel>(m, "MultiLabelModel")
        .def(py::init([](FeatureMatrix features, FuzzyLabelMatrix fuzzy, int k, double smoothing,
                         double threshold, bool as_printed, bool classic) {
                 MultiLabelConfig cfg;
                 cfg.k_neighbors = k;
                 cfg.smoothing = smoothing;
                 cfg.threshold = threshold;
                 cfg.as_printed = as_printed;
                 cfg.classic = classic;
                 return MultiLabelModel(std::move(features), std::move(fuzzy), cfg);
             }),
             py::arg("features"), py::arg("fuzzy"), py::arg("k") = 7, py::arg("smoothing") = 0.05,
             py::arg("threshold") = 0.5, py::arg("as_printed") = false,
             py::arg("classic") = false)
        .def("predict_fuzzy", &MultiLabelModel::predict_fuzzy, py::arg("query"))
        .def("predict_logical", &MultiLabelModel::predict_logical, py::arg("query"))
        .def_property_readonly("priors", &MultiLabelModel::priors)
        .def_property_readonly("labels", &MultiLabelModel::label_count);

    // ---- metrics ---------------------------------------------------------
    m.def("accuracy", &accuracy, py::arg("pred"), py::arg("truth"));
    m.def(
        "f1",
        [](const std::vector<int>& pred, const std::vector<int>& truth, int n_classes,
           const std::string& averaging) {
            return f1(pred, truth, n_classes,
                      averaging == "macro" ? F1Averaging::macro : F1Averaging::binary);
        },
        py::arg("pred"), py::arg("truth"), py::arg("n_classes"), py::arg("averaging") = "binary");
    m.def("roc_auc", &roc_auc, py::arg("scores"), py::arg("truth"));
    m.def("roc_auc_macro", &roc_auc_macro, py::arg("scores"), py::arg("truth"),
          py::arg("n_classes"));
    m.def("hamming_loss", &hamming_loss, py::arg("pred"), py::arg("truth"));
    auto ranking = [](RankingValue (*fn)(const ScoreMatrix&, const LogicalLabelMatrix&)) {
        return [fn](const ScoreMatrix& scores, const LogicalLabelMatrix& truth) {
            RankingValue r = fn(scores, truth);
            return py::make_tuple(r.value, r.skipped);
        };
    };
    m.def("average_precision", ranking(&average_precision), py::arg("scores"), py::arg("truth"),
          "Returns (value, skipped_instances)");
    m.def("one_error", ranking(&one_error), py::arg("scores"), py::arg("truth"));
    m.def("ranking_loss", ranking(&ranking_loss), py::arg("scores"), py::arg("truth"));
    m.def("coverage", ranking(&coverage), py::arg("scores"), py::arg("truth"));

    // ---- helpers ---------------------------------------------------------
    m.def(
        "standardize",
        [](const FeatureMatrix& x) {
            auto [z, s] = standardize(x);
            return py::make_tuple(z, s.mean, s.std_dev);
        },
        py::arg("features"), "Returns (standardized, mean, std)");
    m.def(
        "fuzzy_to_logical",
        [](const FuzzyLabelMatrix& fuzzy, const std::string& mode, double threshold) {
            return fuzzy_to_logical(fuzzy, label_mode_from_string(mode), threshold);
        },
        py::arg("fuzzy"), py::arg("mode"), py::arg("threshold") = 0.5);
    m.def(
        "load_csv",
        [](const std::string& path, int label_cols, const std::string& mode) {
            return load_csv(path, label_cols, label_mode_from_string(mode));
        },
        py::arg("path"), py::arg("label_cols"), py::arg("mode") = "single");
}
