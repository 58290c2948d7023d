#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flel/arff.hpp"
#include "flel/harness.hpp"
#include "flel/synthdata.hpp"

namespace fs = std::filesystem;
using namespace flel;

namespace {

struct PipelineFlags {
    int fcm_k = 0;  // 0 -> label count
    double fcm_m = 2.0;
    double fcm_tol = 1e-5;
    std::uint64_t fcm_seed = 0;
    std::string kernel_sigma = "median";
    std::string graph_knn = "full";
    bool row_stochastic = false;
    bool asymmetric = false;
    double alpha = 0.5;
    double prop_tol = 1e-6;
    int prop_max_iter = 1000;
    bool no_clip = false;
    bool no_standardize = false;
    double epsilon = 1e-10;
    double threshold = 0.5;
    bool as_printed = false;
    bool classic_mlknn = false;
    std::string baseline = "majority";
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
    cmd->add_option("--fcm-k", f.fcm_k, "FCM cluster count (0 = number of labels)");
    cmd->add_option("--fcm-m", f.fcm_m, "FCM fuzzifier");
    cmd->add_option("--fcm-tol", f.fcm_tol, "FCM convergence tolerance");
    cmd->add_option("--fcm-seed", f.fcm_seed, "FCM init seed");
    cmd->add_option("--kernel-sigma", f.kernel_sigma, "Gaussian bandwidth: 'median' or a float");
    cmd->add_option("--graph-knn", f.graph_knn, "Graph sparsifier: 'full' or neighbor count");
    cmd->add_flag("--row-stochastic", f.row_stochastic, "Random-walk normalization instead of symmetric");
    cmd->add_flag("--asymmetric", f.asymmetric, "Skip the W symmetrization step");
    cmd->add_option("--alpha", f.alpha, "Propagation mixing parameter in (0,1)");
    cmd->add_option("--prop-tol", f.prop_tol, "Propagation convergence tolerance");
    cmd->add_option("--prop-max-iter", f.prop_max_iter, "Propagation iteration cap");
    cmd->add_flag("--no-clip", f.no_clip, "Do not clamp generated labels into [0,1]");
    cmd->add_flag("--no-standardize", f.no_standardize, "Skip per-fold feature standardization");
    cmd->add_option("--epsilon", f.epsilon, "Distance-weight floor (single-label)");
    cmd->add_option("--threshold", f.threshold, "Multi-label membership/decision threshold");
    cmd->add_flag("--as-printed", f.as_printed, "Literal indicator directions in counts");
    cmd->add_flag("--classic-mlknn", f.classic_mlknn, "Classic histogram ML-KNN conditioning");
    cmd->add_option("--baseline", f.baseline, "Single-label baseline: majority|soft")
        ->check(CLI::IsMember({"majority", "soft"}));
}

PipelineConfig resolve_pipeline(const PipelineFlags& f) {
    PipelineConfig pipe;
    pipe.fcm.k = f.fcm_k;
    pipe.fcm.fuzzifier = f.fcm_m;
    pipe.fcm.tol = f.fcm_tol;
    pipe.fcm.seed = f.fcm_seed;
    if (f.kernel_sigma != "median") pipe.graph.kernel_sigma = std::stod(f.kernel_sigma);
    if (f.graph_knn != "full") pipe.graph.knn = std::stoi(f.graph_knn);
    pipe.graph.symmetrize = !f.asymmetric;
    pipe.graph.normalization =
        f.row_stochastic ? GraphNormalization::row_stochastic : GraphNormalization::symmetric;
    pipe.prop.alpha = f.alpha;
    pipe.prop.tol = f.prop_tol;
    pipe.prop.max_iter = f.prop_max_iter;
    pipe.prop.clip = !f.no_clip;
    pipe.standardize = !f.no_standardize;
    pipe.epsilon = f.epsilon;
    pipe.threshold = f.threshold;
    pipe.as_printed = f.as_printed;
    pipe.classic_mlknn = f.classic_mlknn;
    pipe.baseline = f.baseline == "soft" ? SingleBaseline::soft : SingleBaseline::majority;
    return pipe;
}

void write_reports(const ExperimentReport& report, const std::string& out_dir) {
    fs::create_directories(out_dir);
    emit_report_json(report, out_dir + "/report.json");
    emit_report_csv(report, out_dir + "/report.csv");
    emit_long_csv(report, out_dir + "/report_long.csv");
    emit_timings_json(report, out_dir + "/timings.json");
}

void print_summary(const ExperimentReport& report, LabelMode mode) {
    auto best = best_settings(report, mode);
    for (const auto& [method, agg] : best) {
        std::printf("%-16s k=%-3d", method.c_str(), agg.k);
        if (agg.smoothing >= 0.0) std::printf(" s=%-5g", agg.smoothing);
        for (const auto& [name, value] : agg.mean)
            std::printf("  %s=%.4f(%.2f)", name.c_str(), value, agg.std_dev.at(name));
        std::printf("\n");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy label generation and fuzzy-label-enhanced KNN classifiers"};
    app.require_subcommand(1);

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with true fuzzy labels");
    std::string synth_mode = "single", synth_out = "synthetic";
    SynthConfig synth_cfg;
    bool synth_defaults_set = false;
    synth->add_option("--mode", synth_mode, "single|multi")
        ->check(CLI::IsMember({"single", "multi"}));
    auto* opt_n = synth->add_option("--n", synth_cfg.n_total, "Total sample count");
    synth->add_option("--clusters", synth_cfg.k_clusters, "Cluster / label count");
    auto* opt_dims = synth->add_option("--dims", synth_cfg.dims, "Feature dimension");
    synth->add_option("--phi", synth_cfg.phi, "Covariance scale factor");
    synth->add_option("--rho", synth_cfg.rho, "Correlation weight in [0,1]");
    synth->add_option("--sigma", synth_cfg.noise_sigma, "Noise std / kernel bandwidth (multi)");
    synth->add_option("--alpha-offset", synth_cfg.alpha_offset, "Membership offset (multi)");
    synth->add_flag("--labels-at-noisy,!--labels-at-clean",
                    [&synth_cfg](std::int64_t c) { synth_cfg.membership_at_clean = c <= 0; },
                    "Evaluate multi-label memberships at the noisy sample position");
    synth->add_option("--seed", synth_cfg.seed, "RNG seed");
    synth->add_option("--out", synth_out, "Output stem (<out>.csv/.json/.fuzzy.csv)");
    synth->callback([&] { synth_defaults_set = true; });

    // ---- gen-labels ----
    auto* gen = app.add_subcommand("gen-labels", "Generate fuzzy labels for a dataset CSV");
    std::string gen_in, gen_out;
    PipelineFlags gen_flags;
    gen->add_option("--in", gen_in, "Input dataset CSV (with .json descriptor)")->required();
    gen->add_option("--out", gen_out, "Output fuzzy label CSV")->required();
    add_pipeline_flags(gen, gen_flags);

    // ---- run-single / run-multi (three-arm) ----
    std::string run_in, run_out = "out";
    std::vector<int> run_k{7};
    std::vector<double> run_smooth{0.05};
    int run_folds = 5;
    std::uint64_t run_seed = 0;
    std::vector<std::string> run_arms{"true_logical", "true_fuzzy", "generated_fuzzy"};
    PipelineFlags run_flags;
    auto add_run_cmd = [&](const char* name, const char* desc) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--in", run_in, "Dataset CSV")->required();
        cmd->add_option("--out", run_out, "Output directory");
        cmd->add_option("--k", run_k, "Neighbor counts");
        cmd->add_option("--smooth", run_smooth, "Smoothing grid (multi)");
        cmd->add_option("--folds", run_folds, "Fold count");
        cmd->add_option("--seed", run_seed, "Master seed");
        cmd->add_option("--arms", run_arms, "Arms to run");
        add_pipeline_flags(cmd, run_flags);
        return cmd;
    };
    auto* run_single = add_run_cmd("run-single", "Three-arm single-label experiment");
    auto* run_multi = add_run_cmd("run-multi", "Three-arm multi-label experiment");

    // ---- compare ----
    auto* compare = app.add_subcommand("compare", "Baseline vs fuzzy-enhanced comparison");
    std::string cmp_in, cmp_out = "out";
    std::vector<int> cmp_k{1, 3, 5, 7, 9, 11, 13};
    std::vector<double> cmp_smooth{0.01, 0.03, 0.05, 0.07, 0.09};
    int cmp_folds = 5;
    std::uint64_t cmp_seed = 0;
    PipelineFlags cmp_flags;
    compare->add_option("--in", cmp_in, "Dataset CSV")->required();
    compare->add_option("--out", cmp_out, "Output directory");
    compare->add_option("--k", cmp_k, "Neighbor grid");
    compare->add_option("--smooth", cmp_smooth, "Smoothing grid (multi)");
    compare->add_option("--folds", cmp_folds, "Fold count");
    compare->add_option("--seed", cmp_seed, "Master seed");
    add_pipeline_flags(compare, cmp_flags);

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "Re-emit a report JSON as CSV");
    std::string rep_in, rep_out, rep_format = "csv";
    report_cmd->add_option("--in", rep_in, "report.json path")->required();
    report_cmd->add_option("--out", rep_out, "Output file")->required();
    report_cmd->add_option("--format", rep_format, "csv|long|json")
        ->check(CLI::IsMember({"csv", "long", "json"}));

    // ---- convert-arff ----
    auto* conv = app.add_subcommand("convert-arff", "Convert a MULAN ARFF file to dataset CSV");
    std::string arff_in, arff_xml, arff_out;
    int arff_labels = 0;
    std::string arff_mode = "multi";
    conv->add_option("--in", arff_in, "ARFF file")->required();
    conv->add_option("--xml", arff_xml, "MULAN XML label header");
    conv->add_option("--labels", arff_labels, "Trailing label attribute count (without --xml)");
    conv->add_option("--mode", arff_mode, "single|multi")->check(CLI::IsMember({"single", "multi"}));
    conv->add_option("--out", arff_out, "Output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) {
            (void)synth_defaults_set;
            if (synth_mode == "multi") {
                if (!*opt_n) synth_cfg.n_total = 2601;
                if (!*opt_dims) synth_cfg.dims = 3;
                Dataset ds = gen_multi_label(synth_cfg);
                ds.name = synth_out;
                save_csv(synth_out + ".csv", ds);
                save_descriptor(synth_out + ".csv", ds);
                save_matrix_csv(synth_out + ".fuzzy.csv", *ds.fuzzy, "u");
            } else {
                Dataset ds = gen_single_label(synth_cfg);
                ds.name = synth_out;
                save_csv(synth_out + ".csv", ds);
                save_descriptor(synth_out + ".csv", ds);
                save_matrix_csv(synth_out + ".fuzzy.csv", *ds.fuzzy, "u");
            }
            std::printf("wrote %s.csv, %s.json, %s.fuzzy.csv\n", synth_out.c_str(),
                        synth_out.c_str(), synth_out.c_str());
        } else if (*gen) {
            Dataset ds = load_dataset(gen_in);
            PipelineConfig pipe = resolve_pipeline(gen_flags);
            FeatureMatrix x = ds.features;
            if (pipe.standardize) x = standardize(ds.features).first;
            FlgenResult res = flgen_lp(x, ds.logical,
                                       [&] {
                                           FcmConfig c = pipe.fcm;
                                           if (c.k == 0) c.k = int(ds.labels());
                                           return c;
                                       }(),
                                       pipe.graph, pipe.prop);
            save_matrix_csv(gen_out, res.fuzzy, "u", 6);
            if (!res.converged)
                std::fprintf(stderr, "warning: propagation hit max_iter without meeting tol\n");
            std::printf("wrote %s (%d iterations, sigma=%g)\n", gen_out.c_str(), res.iterations,
                        res.kernel_sigma);
        } else if (*run_single || *run_multi) {
            Dataset ds = load_dataset(run_in);
            LabelMode want = *run_single ? LabelMode::single_label : LabelMode::multi_label;
            if (ds.mode != want) throw PlanError("dataset mode does not match the subcommand");
            ExperimentPlan plan;
            plan.k_grid = run_k;
            plan.smooth_grid = run_smooth;
            plan.folds = run_folds;
            plan.seed = run_seed;
            plan.arms.clear();
            for (const auto& a : run_arms) {
                if (a == "true_logical") plan.arms.push_back(Arm::true_logical);
                else if (a == "true_fuzzy") plan.arms.push_back(Arm::true_fuzzy);
                else if (a == "generated_fuzzy") plan.arms.push_back(Arm::generated_fuzzy);
                else throw PlanError("unknown arm: " + a);
            }
            ExperimentReport report = run_three_arm(ds, plan, resolve_pipeline(run_flags));
            write_reports(report, run_out);
            print_summary(report, ds.mode);
        } else if (*compare) {
            Dataset ds = load_dataset(cmp_in);
            ExperimentPlan plan;
            plan.k_grid = cmp_k;
            plan.smooth_grid = cmp_smooth;
            plan.folds = cmp_folds;
            plan.seed = cmp_seed;
            ExperimentReport report = run_comparison(ds, plan, resolve_pipeline(cmp_flags));
            write_reports(report, cmp_out);
            print_summary(report, ds.mode);
        } else if (*report_cmd) {
            ExperimentReport report = load_report_json(rep_in);
            if (rep_format == "csv") emit_report_csv(report, rep_out);
            else if (rep_format == "long") emit_long_csv(report, rep_out);
            else emit_report_json(report, rep_out);
            std::printf("wrote %s\n", rep_out.c_str());
        } else if (*conv) {
            if (arff_xml.empty() && arff_labels <= 0)
                throw PlanError("convert-arff needs --xml or --labels");
            Dataset ds = load_arff(arff_in, arff_xml, arff_labels,
                                   label_mode_from_string(arff_mode));
            save_csv(arff_out, ds);
            save_descriptor(arff_out, ds);
            std::printf("wrote %s (+.json), N=%lld D=%lld L=%lld\n", arff_out.c_str(),
                        (long long)ds.n(), (long long)ds.dims(), (long long)ds.labels());
        }
    } catch (const PlanError& e) {
        std::fprintf(stderr, "plan error: %s\n", e.what());
        return 2;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
