#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flel/classify_multi.hpp"
#include "flel/classify_single.hpp"
#include "flel/dataset.hpp"
#include "flel/flgen.hpp"

namespace flel {

enum class Arm { true_logical, true_fuzzy, generated_fuzzy };
std::string to_string(Arm arm);

enum class SingleBaseline { majority, soft };

// Everything below the experiment design: generation + classifier knobs.
struct PipelineConfig {
    FcmConfig fcm;  // fcm.k == 0 means "use the label count"
    GraphConfig graph;
    PropagationConfig prop;
    bool standardize = true;
    double epsilon = 1e-10;                              // single-label weight floor
    double threshold = 0.5;                              // multi-label sigma
    bool as_printed = false;
    bool classic_mlknn = false;
    SingleBaseline baseline = SingleBaseline::majority;  // compare, single mode
};

struct ExperimentPlan {
    std::vector<Arm> arms = {Arm::true_logical, Arm::true_fuzzy, Arm::generated_fuzzy};
    std::vector<int> k_grid = {7};
    std::vector<double> smooth_grid = {0.05};  // multi-label only
    int folds = 5;
    std::uint64_t seed = 0;
};

struct CellTimings {
    double generation_s = 0.0;
    double training_s = 0.0;
    double prediction_s = 0.0;
};

struct ReportCell {
    std::string method;  // arm name or {"baseline","flel"}
    int fold = 0;
    int k = 0;
    double smoothing = -1.0;  // -1 when not applicable
    std::map<std::string, double> metrics;
    CellTimings timings;
    bool failed = false;
    std::string failure_reason;
};

struct ExperimentReport {
    std::string schema_version = "1";
    std::string dataset;
    std::string mode;
    std::uint64_t seed = 0;
    int folds = 0;
    std::vector<ReportCell> cells;
};

struct Aggregate {
    std::string method;
    int k = 0;
    double smoothing = -1.0;
    std::map<std::string, double> mean;
    std::map<std::string, double> std_dev;
};

// Fold means/stds per (method, k, smoothing) cell group.
std::vector<Aggregate> aggregate_report(const ExperimentReport& report);

// Best aggregate per method: highest mean accuracy (single) / AP (multi).
std::map<std::string, Aggregate> best_settings(const ExperimentReport& report,
                                               LabelMode mode);

// Three-arm synthetic protocol. Arm 3 regenerates fuzzy labels inside every
// training fold from that fold's logical labels only.
ExperimentReport run_three_arm(const Dataset& dataset, const ExperimentPlan& plan,
                               const PipelineConfig& pipe);

// Baseline vs. fuzzy-enhanced classifier over the parameter grid.
ExperimentReport run_comparison(const Dataset& dataset, const ExperimentPlan& plan,
                                const PipelineConfig& pipe);

// Canonical report (no wall-clock content; byte-deterministic under a fixed
// seed). Timings go to their own file.
void emit_report_json(const ExperimentReport& report, const std::string& path);
void emit_report_csv(const ExperimentReport& report, const std::string& path);
// Plot-ready long format: one (cell, metric) pair per row.
void emit_long_csv(const ExperimentReport& report, const std::string& path);
void emit_timings_json(const ExperimentReport& report, const std::string& path);

ExperimentReport load_report_json(const std::string& path);

}  // namespace flel
