#include "flel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "flel/metrics.hpp"
#include "flel/rng.hpp"

namespace flel {

std::string to_string(Arm arm) {
    switch (arm) {
        case Arm::true_logical: return "true_logical";
        case Arm::true_fuzzy: return "true_fuzzy";
        case Arm::generated_fuzzy: return "generated_fuzzy";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd out(Eigen::Index(idx.size()), m.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) out.row(Eigen::Index(i)) = m.row(idx[i]);
    return out;
}

struct FoldData {
    FeatureMatrix train_x, test_x;
    LogicalLabelMatrix train_y, test_y;
    std::optional<FuzzyLabelMatrix> train_fuzzy;
};

FoldData make_fold(const Dataset& ds, const FoldSplit& split, int fold, bool do_standardize) {
    FoldData fd;
    auto train_idx = split.train_indices(fold);
    auto test_idx = split.test_indices(fold);
    FeatureMatrix train_x = take_rows(ds.features, train_idx);
    FeatureMatrix test_x = take_rows(ds.features, test_idx);
    if (do_standardize) {
        auto [xs, scaler] = standardize(train_x);
        fd.train_x = std::move(xs);
        fd.test_x = scaler.apply(test_x);
    } else {
        fd.train_x = std::move(train_x);
        fd.test_x = std::move(test_x);
    }
    fd.train_y = take_rows(ds.logical, train_idx);
    fd.test_y = take_rows(ds.logical, test_idx);
    if (ds.fuzzy) fd.train_fuzzy = take_rows(*ds.fuzzy, train_idx);
    return fd;
}

FcmConfig resolve_fcm(const PipelineConfig& pipe, Eigen::Index label_count, std::uint64_t seed) {
    FcmConfig fcm = pipe.fcm;
    if (fcm.k == 0) fcm.k = int(label_count);
    fcm.seed = seed;
    return fcm;
}

// Fuzzy labels for one training fold; used by arm 3 and the flel method.
std::pair<FuzzyLabelMatrix, double> generate_fold_fuzzy(const FeatureMatrix& train_x,
                                                        const LogicalLabelMatrix& train_y,
                                                        const PipelineConfig& pipe,
                                                        std::uint64_t seed) {
    auto start = Clock::now();
    FlgenResult gen =
        flgen_lp(train_x, train_y, resolve_fcm(pipe, train_y.cols(), seed), pipe.graph, pipe.prop);
    return {std::move(gen.fuzzy), seconds_since(start)};
}

std::vector<int> logical_to_class(const LogicalLabelMatrix& y) { return row_argmax(y); }

void single_label_metrics(const FeatureMatrix& test_x, const LogicalLabelMatrix& test_y,
                          const SingleLabelModel& model, bool majority, ReportCell& cell) {
    const Eigen::Index n_test = test_x.rows();
    const int n_classes = int(test_y.cols());
    std::vector<int> pred(static_cast<std::size_t>(n_test));
    ScoreMatrix scores(n_test, n_classes);

    // warm-up excluded from the timed loop
    if (n_test > 0) (void)model.predict_fuzzy(test_x.row(0).transpose());
    auto start = Clock::now();
    for (Eigen::Index i = 0; i < n_test; ++i) {
        Eigen::VectorXd u = model.predict_fuzzy(test_x.row(i).transpose());
        scores.row(i) = u.transpose();
        pred[std::size_t(i)] = majority ? model.predict_majority(test_x.row(i).transpose())
                                        : model.predict_class(test_x.row(i).transpose());
    }
    cell.timings.prediction_s = seconds_since(start);

    auto truth = logical_to_class(test_y);
    cell.metrics["accuracy"] = accuracy(pred, truth);
    cell.metrics["f1"] = f1(pred, truth, n_classes,
                            n_classes == 2 ? F1Averaging::binary : F1Averaging::macro);
    auto auc = roc_auc_macro(scores, truth, n_classes);
    if (auc) cell.metrics["roc_auc"] = *auc;
}

void multi_label_metrics(const FeatureMatrix& test_x, const LogicalLabelMatrix& test_y,
                         const MultiLabelModel& model, ReportCell& cell) {
    const Eigen::Index n_test = test_x.rows();
    ScoreMatrix scores(n_test, test_y.cols());
    LogicalLabelMatrix pred(n_test, test_y.cols());

    if (n_test > 0) (void)model.predict_fuzzy(test_x.row(0).transpose());
    auto start = Clock::now();
    for (Eigen::Index i = 0; i < n_test; ++i) {
        Eigen::VectorXd p = model.predict_fuzzy(test_x.row(i).transpose());
        scores.row(i) = p.transpose();
        for (Eigen::Index l = 0; l < p.size(); ++l)
            pred(i, l) = p(l) >= model.config().threshold ? 1.0 : 0.0;
    }
    cell.timings.prediction_s = seconds_since(start);

    cell.metrics["ap"] = average_precision(scores, test_y).value;
    cell.metrics["hl"] = hamming_loss(pred, test_y);
    cell.metrics["oe"] = one_error(scores, test_y).value;
    cell.metrics["rl"] = ranking_loss(scores, test_y).value;
    cell.metrics["cv"] = coverage(scores, test_y).value;
}

FoldSplit plan_split(const Dataset& ds, const ExperimentPlan& plan) {
    if (ds.mode == LabelMode::single_label)
        return kfold_split(ds.n(), plan.folds, plan.seed, row_argmax(ds.logical));
    return kfold_split(ds.n(), plan.folds, plan.seed);
}

MultiLabelConfig make_multi_cfg(const PipelineConfig& pipe, int k, double smoothing) {
    MultiLabelConfig cfg;
    cfg.k_neighbors = k;
    cfg.smoothing = smoothing;
    cfg.threshold = pipe.threshold;
    cfg.as_printed = pipe.as_printed;
    cfg.classic = pipe.classic_mlknn;
    return cfg;
}

}  // namespace

ExperimentReport run_three_arm(const Dataset& dataset, const ExperimentPlan& plan,
                               const PipelineConfig& pipe) {
    validate_dataset(dataset);
    if (plan.k_grid.empty()) throw PlanError("empty K grid");
    for (Arm arm : plan.arms)
        if (arm == Arm::true_fuzzy && !dataset.fuzzy)
            throw PlanError("true_fuzzy arm requires a dataset with true fuzzy labels");

    ExperimentReport report;
    report.dataset = dataset.name;
    report.mode = to_string(dataset.mode);
    report.seed = plan.seed;
    report.folds = plan.folds;

    FoldSplit split = plan_split(dataset, plan);
    for (int fold = 0; fold < plan.folds; ++fold) {
        FoldData fd = make_fold(dataset, split, fold, pipe.standardize);
        std::optional<FuzzyLabelMatrix> generated;
        double generation_s = 0.0;
        for (std::size_t a = 0; a < plan.arms.size(); ++a) {
            Arm arm = plan.arms[a];
            FuzzyLabelMatrix train_labels;
            if (arm == Arm::true_logical) {
                train_labels = fd.train_y;
            } else if (arm == Arm::true_fuzzy) {
                train_labels = *fd.train_fuzzy;
            } else {
                if (!generated) {
                    auto [fuzzy, secs] = generate_fold_fuzzy(
                        fd.train_x, fd.train_y, pipe,
                        derive_seed(plan.seed, std::uint64_t(fold), 101));
                    generated = std::move(fuzzy);
                    generation_s = secs;
                }
                train_labels = *generated;
            }
            for (int k : plan.k_grid) {
                for (double s : plan.smooth_grid) {
                    ReportCell cell;
                    cell.method = to_string(arm);
                    cell.fold = fold;
                    cell.k = k;
                    cell.smoothing = dataset.mode == LabelMode::multi_label ? s : -1.0;
                    cell.timings.generation_s = arm == Arm::generated_fuzzy ? generation_s : 0.0;
                    auto t0 = Clock::now();
                    if (dataset.mode == LabelMode::single_label) {
                        SingleLabelModel model(fd.train_x, train_labels, k, pipe.epsilon);
                        cell.timings.training_s = seconds_since(t0);
                        single_label_metrics(fd.test_x, fd.test_y, model, false, cell);
                    } else {
                        MultiLabelModel model(fd.train_x, train_labels, make_multi_cfg(pipe, k, s));
                        cell.timings.training_s = seconds_since(t0);
                        multi_label_metrics(fd.test_x, fd.test_y, model, cell);
                    }
                    report.cells.push_back(std::move(cell));
                    if (dataset.mode == LabelMode::single_label) break;  // no smoothing grid
                }
            }
        }
    }
    return report;
}

ExperimentReport run_comparison(const Dataset& dataset, const ExperimentPlan& plan,
                                const PipelineConfig& pipe) {
    validate_dataset(dataset);
    if (plan.k_grid.empty() || plan.smooth_grid.empty()) throw PlanError("empty parameter grid");

    ExperimentReport report;
    report.dataset = dataset.name;
    report.mode = to_string(dataset.mode);
    report.seed = plan.seed;
    report.folds = plan.folds;

    FoldSplit split = plan_split(dataset, plan);
    for (int fold = 0; fold < plan.folds; ++fold) {
        FoldData fd = make_fold(dataset, split, fold, pipe.standardize);
        auto [generated, generation_s] = generate_fold_fuzzy(
            fd.train_x, fd.train_y, pipe, derive_seed(plan.seed, std::uint64_t(fold), 202));
        for (const std::string& method : {std::string("baseline"), std::string("flel")}) {
            const bool is_flel = method == "flel";
            for (int k : plan.k_grid) {
                for (double s : plan.smooth_grid) {
                    ReportCell cell;
                    cell.method = method;
                    cell.fold = fold;
                    cell.k = k;
                    cell.smoothing = dataset.mode == LabelMode::multi_label ? s : -1.0;
                    cell.timings.generation_s = is_flel ? generation_s : 0.0;
                    auto t0 = Clock::now();
                    if (dataset.mode == LabelMode::single_label) {
                        SingleLabelModel model(fd.train_x, is_flel ? generated : fd.train_y, k,
                                               pipe.epsilon);
                        cell.timings.training_s = seconds_since(t0);
                        const bool majority =
                            !is_flel && pipe.baseline == SingleBaseline::majority;
                        single_label_metrics(fd.test_x, fd.test_y, model, majority, cell);
                    } else {
                        MultiLabelModel model(fd.train_x, is_flel ? generated : fd.train_y,
                                              make_multi_cfg(pipe, k, s));
                        cell.timings.training_s = seconds_since(t0);
                        multi_label_metrics(fd.test_x, fd.test_y, model, cell);
                    }
                    report.cells.push_back(std::move(cell));
                    if (dataset.mode == LabelMode::single_label) break;
                }
            }
        }
    }
    return report;
}

std::vector<Aggregate> aggregate_report(const ExperimentReport& report) {
    std::map<std::tuple<std::string, int, double>, std::vector<const ReportCell*>> groups;
    for (const auto& cell : report.cells)
        if (!cell.failed) groups[{cell.method, cell.k, cell.smoothing}].push_back(&cell);

    std::vector<Aggregate> out;
    for (const auto& [key, cells] : groups) {
        Aggregate agg;
        agg.method = std::get<0>(key);
        agg.k = std::get<1>(key);
        agg.smoothing = std::get<2>(key);
        for (const auto& [name, _] : cells.front()->metrics) {
            double sum = 0.0;
            for (const auto* c : cells) sum += c->metrics.at(name);
            double mean = sum / double(cells.size());
            double var = 0.0;
            for (const auto* c : cells) var += (c->metrics.at(name) - mean) *
                                               (c->metrics.at(name) - mean);
            agg.mean[name] = mean;
            agg.std_dev[name] = std::sqrt(var / double(cells.size()));
        }
        out.push_back(std::move(agg));
    }
    return out;
}

std::map<std::string, Aggregate> best_settings(const ExperimentReport& report, LabelMode mode) {
    const std::string key = mode == LabelMode::single_label ? "accuracy" : "ap";
    std::map<std::string, Aggregate> best;
    for (auto& agg : aggregate_report(report)) {
        auto it = best.find(agg.method);
        if (it == best.end() || agg.mean.at(key) > it->second.mean.at(key))
            best[agg.method] = agg;
    }
    return best;
}

namespace {

nlohmann::ordered_json cell_json(const ReportCell& cell) {
    nlohmann::ordered_json j;
    j["method"] = cell.method;
    j["fold"] = cell.fold;
    j["k"] = cell.k;
    if (cell.smoothing >= 0.0) j["smoothing"] = cell.smoothing;
    if (cell.failed) {
        j["failed"] = true;
        j["reason"] = cell.failure_reason;
    } else {
        j["metrics"] = cell.metrics;
    }
    return j;
}

}  // namespace

void emit_report_json(const ExperimentReport& report, const std::string& path) {
    nlohmann::ordered_json j;
    j["schema_version"] = report.schema_version;
    j["dataset"] = report.dataset;
    j["mode"] = report.mode;
    j["seed"] = report.seed;
    j["folds"] = report.folds;
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& cell : report.cells) j["cells"].push_back(cell_json(cell));
    j["aggregates"] = nlohmann::ordered_json::array();
    for (const auto& agg : aggregate_report(report)) {
        nlohmann::ordered_json a;
        a["method"] = agg.method;
        a["k"] = agg.k;
        if (agg.smoothing >= 0.0) a["smoothing"] = agg.smoothing;
        a["mean"] = agg.mean;
        a["std"] = agg.std_dev;
        j["aggregates"].push_back(a);
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write report: " + path);
    out << j.dump(2) << "\n";
}

void emit_report_csv(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write report: " + path);
    std::vector<std::string> metric_names;
    for (const auto& cell : report.cells)
        for (const auto& [name, _] : cell.metrics)
            if (std::find(metric_names.begin(), metric_names.end(), name) == metric_names.end())
                metric_names.push_back(name);
    out << "dataset,mode,method,fold,k,smoothing";
    for (const auto& name : metric_names) out << "," << name;
    out << "\n";
    char buf[64];
    for (const auto& cell : report.cells) {
        out << report.dataset << "," << report.mode << "," << cell.method << "," << cell.fold
            << "," << cell.k << ",";
        if (cell.smoothing >= 0.0) out << cell.smoothing;
        for (const auto& name : metric_names) {
            out << ",";
            auto it = cell.metrics.find(name);
            if (it != cell.metrics.end()) {
                std::snprintf(buf, sizeof(buf), "%.12g", it->second);
                out << buf;
            }
        }
        out << "\n";
    }
}

void emit_long_csv(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write report: " + path);
    out << "dataset,mode,method,fold,k,smoothing,metric,value\n";
    char buf[64];
    for (const auto& cell : report.cells)
        for (const auto& [name, value] : cell.metrics) {
            std::snprintf(buf, sizeof(buf), "%.12g", value);
            out << report.dataset << "," << report.mode << "," << cell.method << "," << cell.fold
                << "," << cell.k << ",";
            if (cell.smoothing >= 0.0) out << cell.smoothing;
            out << "," << name << "," << buf << "\n";
        }
}

void emit_timings_json(const ExperimentReport& report, const std::string& path) {
    nlohmann::ordered_json j;
    j["dataset"] = report.dataset;
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& cell : report.cells) {
        nlohmann::ordered_json t;
        t["method"] = cell.method;
        t["fold"] = cell.fold;
        t["k"] = cell.k;
        t["generation_s"] = cell.timings.generation_s;
        t["training_s"] = cell.timings.training_s;
        t["prediction_s"] = cell.timings.prediction_s;
        j["cells"].push_back(t);
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write timings: " + path);
    out << j.dump(2) << "\n";
}

ExperimentReport load_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open report: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad report JSON: ") + e.what());
    }
    ExperimentReport report;
    report.schema_version = j.at("schema_version").get<std::string>();
    report.dataset = j.at("dataset").get<std::string>();
    report.mode = j.at("mode").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.folds = j.at("folds").get<int>();
    for (const auto& cj : j.at("cells")) {
        ReportCell cell;
        cell.method = cj.at("method").get<std::string>();
        cell.fold = cj.at("fold").get<int>();
        cell.k = cj.at("k").get<int>();
        if (cj.contains("smoothing")) cell.smoothing = cj.at("smoothing").get<double>();
        if (cj.value("failed", false)) {
            cell.failed = true;
            cell.failure_reason = cj.value("reason", "");
        } else {
            for (auto it = cj.at("metrics").begin(); it != cj.at("metrics").end(); ++it)
                cell.metrics[it.key()] = it.value().get<double>();
        }
        report.cells.push_back(std::move(cell));
    }
    return report;
}

}  // namespace flel
