#include "flel/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "flel/rng.hpp"

namespace flel {

std::string to_string(LabelMode mode) {
    return mode == LabelMode::single_label ? "single" : "multi";
}

LabelMode label_mode_from_string(const std::string& s) {
    if (s == "single") return LabelMode::single_label;
    if (s == "multi") return LabelMode::multi_label;
    throw ParseError("unknown label mode: '" + s + "' (expected 'single' or 'multi')");
}

void validate_features(const FeatureMatrix& x) {
    if (x.rows() < 1 || x.cols() < 1)
        throw ValidationError("feature matrix must have N >= 1 and D >= 1");
    if (!x.allFinite()) throw ValidationError("feature matrix contains NaN or Inf");
}

void validate_logical(const LogicalLabelMatrix& y, LabelMode mode) {
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        double row_sum = 0;
        for (Eigen::Index j = 0; j < y.cols(); ++j) {
            double v = y(i, j);
            if (v != 0.0 && v != 1.0)
                throw ValidationError("logical label at row " + std::to_string(i) + ", col " +
                                      std::to_string(j) + " is " + std::to_string(v) +
                                      ", not in {0,1}");
            row_sum += v;
        }
        if (mode == LabelMode::single_label && row_sum != 1.0)
            throw ValidationError("single-label row " + std::to_string(i) +
                                  " is not one-hot (sum=" + std::to_string(row_sum) + ")");
    }
}

void validate_fuzzy(const FuzzyLabelMatrix& u) {
    if (!u.allFinite()) throw ValidationError("fuzzy label matrix contains NaN or Inf");
    if ((u.array() < 0.0).any() || (u.array() > 1.0).any())
        throw ValidationError("fuzzy label entries must lie in [0,1]");
}

void validate_dataset(const Dataset& ds) {
    validate_features(ds.features);
    validate_logical(ds.logical, ds.mode);
    if (ds.features.rows() != ds.logical.rows())
        throw ValidationError("feature/label row count mismatch");
    if (ds.fuzzy) {
        validate_fuzzy(*ds.fuzzy);
        if (ds.fuzzy->rows() != ds.features.rows() || ds.fuzzy->cols() != ds.logical.cols())
            throw ValidationError("fuzzy label matrix shape mismatch");
    }
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& x) const {
    if (x.cols() != mean.size()) throw ValidationError("standardizer dimension mismatch");
    FeatureMatrix out(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (std_dev(j) == 0.0)
            out.col(j).setZero();
        else
            out.col(j) = (x.col(j).array() - mean(j)) / std_dev(j);
    }
    return out;
}

std::pair<FeatureMatrix, Standardizer> standardize(const FeatureMatrix& x) {
    if (x.rows() < 2) throw ValidationError("standardize requires N >= 2");
    Standardizer s;
    s.mean = x.colwise().mean();
    s.std_dev.resize(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        double var = (x.col(j).array() - s.mean(j)).square().sum() / double(x.rows());
        s.std_dev(j) = var > 0.0 ? std::sqrt(var) : 0.0;
    }
    return {s.apply(x), s};
}

std::vector<Eigen::Index> FoldSplit::train_indices(int fold) const {
    std::vector<Eigen::Index> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] != fold) out.push_back(Eigen::Index(i));
    return out;
}

std::vector<Eigen::Index> FoldSplit::test_indices(int fold) const {
    std::vector<Eigen::Index> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == fold) out.push_back(Eigen::Index(i));
    return out;
}

FoldSplit kfold_split(Eigen::Index n, int fold_count, std::uint64_t seed,
                      const std::vector<int>& class_of) {
    if (fold_count < 2) throw PlanError("fold_count must be >= 2");
    if (n < fold_count) throw PlanError("n (" + std::to_string(n) + ") < fold_count");
    FoldSplit split;
    split.fold_count = fold_count;
    split.seed = seed;
    split.assignments.assign(std::size_t(n), -1);
    Rng rng(mix_seed(seed));

    // Group indices by class (one group when unstratified), shuffle each
    // group, then deal fold indices round-robin across the concatenation so
    // fold sizes differ by at most 1 overall.
    std::map<int, std::vector<Eigen::Index>> groups;
    if (!class_of.empty()) {
        if (Eigen::Index(class_of.size()) != n)
            throw PlanError("class vector length mismatch in kfold_split");
        for (Eigen::Index i = 0; i < n; ++i) groups[class_of[std::size_t(i)]].push_back(i);
    } else {
        auto& g = groups[0];
        g.resize(std::size_t(n));
        std::iota(g.begin(), g.end(), 0);
    }
    int next_fold = 0;
    for (auto& [cls, idx] : groups) {
        std::shuffle(idx.begin(), idx.end(), rng);
        for (Eigen::Index i : idx) {
            split.assignments[std::size_t(i)] = next_fold;
            next_fold = (next_fold + 1) % fold_count;
        }
    }
    return split;
}

std::vector<int> row_argmax(const Eigen::MatrixXd& m) {
    std::vector<int> out(std::size_t(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        int best = 0;
        for (Eigen::Index j = 1; j < m.cols(); ++j)
            if (m(i, j) > m(i, best)) best = int(j);
        out[std::size_t(i)] = best;
    }
    return out;
}

LogicalLabelMatrix fuzzy_to_logical(const FuzzyLabelMatrix& fuzzy, LabelMode mode,
                                    double threshold) {
    LogicalLabelMatrix out = LogicalLabelMatrix::Zero(fuzzy.rows(), fuzzy.cols());
    if (mode == LabelMode::single_label) {
        auto arg = row_argmax(fuzzy);
        for (Eigen::Index i = 0; i < fuzzy.rows(); ++i) out(i, arg[std::size_t(i)]) = 1.0;
    } else {
        if (threshold <= 0.0 || threshold >= 1.0)
            throw PlanError("multi-label threshold must lie in (0,1)");
        for (Eigen::Index i = 0; i < fuzzy.rows(); ++i)
            for (Eigen::Index j = 0; j < fuzzy.cols(); ++j)
                out(i, j) = fuzzy(i, j) >= threshold ? 1.0 : 0.0;
    }
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    const std::string t = trim(cell);
    try {
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size() || !std::isfinite(v)) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ParseError("malformed number '" + cell + "' at data row " + std::to_string(row) +
                         ", column " + std::to_string(col));
    }
}

struct RawCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

RawCsv read_raw_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    RawCsv raw;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file: " + path);
    raw.header = split_line(line);
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != raw.header.size())
            throw ParseError("row " + std::to_string(raw.rows.size() + 1) + " has " +
                             std::to_string(cells.size()) + " cells, header has " +
                             std::to_string(raw.header.size()) + " (" + path + ")");
        raw.rows.push_back(std::move(cells));
    }
    if (raw.rows.empty()) throw ParseError("no data rows in " + path);
    return raw;
}

std::string stem_of(const std::string& csv_path) {
    if (csv_path.size() >= 4 && csv_path.substr(csv_path.size() - 4) == ".csv")
        return csv_path.substr(0, csv_path.size() - 4);
    return csv_path;
}

}  // namespace

Dataset load_csv(const std::string& path, int label_cols, LabelMode mode) {
    if (label_cols < 1) throw PlanError("label_cols must be >= 1");
    RawCsv raw = read_raw_csv(path);
    const std::size_t ncols = raw.header.size();
    if (std::size_t(label_cols) >= ncols)
        throw ParseError("label_cols (" + std::to_string(label_cols) +
                         ") leaves no feature columns in " + path);
    const std::size_t nfeat = ncols - std::size_t(label_cols);
    const std::size_t nrows = raw.rows.size();

    Dataset ds;
    ds.name = stem_of(path);
    ds.mode = mode;
    ds.features.resize(Eigen::Index(nrows), Eigen::Index(nfeat));
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < nfeat; ++j)
            ds.features(Eigen::Index(i), Eigen::Index(j)) = parse_cell(raw.rows[i][j], i, j);

    const bool categorical = (mode == LabelMode::single_label && label_cols == 1);
    if (categorical) {
        // One-hot encode the single categorical target; classes sorted.
        std::set<std::string> classes;
        for (const auto& row : raw.rows) classes.insert(trim(row[nfeat]));
        ds.class_names.assign(classes.begin(), classes.end());
        std::map<std::string, int> index;
        for (std::size_t c = 0; c < ds.class_names.size(); ++c)
            index[ds.class_names[c]] = int(c);
        ds.logical = LogicalLabelMatrix::Zero(Eigen::Index(nrows),
                                              Eigen::Index(ds.class_names.size()));
        for (std::size_t i = 0; i < nrows; ++i)
            ds.logical(Eigen::Index(i), index[trim(raw.rows[i][nfeat])]) = 1.0;
    } else {
        ds.logical.resize(Eigen::Index(nrows), Eigen::Index(label_cols));
        for (std::size_t i = 0; i < nrows; ++i)
            for (int j = 0; j < label_cols; ++j)
                ds.logical(Eigen::Index(i), j) = parse_cell(raw.rows[i][nfeat + std::size_t(j)],
                                                            i, nfeat + std::size_t(j));
    }
    validate_dataset(ds);
    return ds;
}

Dataset load_dataset(const std::string& csv_path) {
    const std::string stem = stem_of(csv_path);
    std::ifstream in(stem + ".json");
    if (!in) throw ParseError("missing dataset descriptor: " + stem + ".json");
    nlohmann::json desc;
    try {
        in >> desc;
    } catch (const std::exception& e) {
        throw ParseError("bad descriptor " + stem + ".json: " + e.what());
    }
    if (!desc.contains("label_cols") || !desc.contains("mode"))
        throw ParseError("descriptor " + stem + ".json needs 'label_cols' and 'mode'");
    Dataset ds = load_csv(csv_path, desc["label_cols"].get<int>(),
                          label_mode_from_string(desc["mode"].get<std::string>()));
    std::ifstream fuzzy_probe(stem + ".fuzzy.csv");
    if (fuzzy_probe) {
        ds.fuzzy = load_matrix_csv(stem + ".fuzzy.csv");
        validate_dataset(ds);
    }
    return ds;
}

namespace {
std::string fmt_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}
}  // namespace

void save_csv(const std::string& path, const Dataset& ds) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    for (Eigen::Index j = 0; j < ds.features.cols(); ++j) out << "f" << j << ",";
    if (ds.mode == LabelMode::single_label && !ds.class_names.empty()) {
        out << "class\n";
        auto cls = row_argmax(ds.logical);
        for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
            for (Eigen::Index j = 0; j < ds.features.cols(); ++j)
                out << fmt_double(ds.features(i, j), 17) << ",";
            out << ds.class_names[std::size_t(cls[std::size_t(i)])] << "\n";
        }
    } else {
        for (Eigen::Index j = 0; j < ds.logical.cols(); ++j)
            out << "l" << j << (j + 1 < ds.logical.cols() ? "," : "\n");
        for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
            for (Eigen::Index j = 0; j < ds.features.cols(); ++j)
                out << fmt_double(ds.features(i, j), 17) << ",";
            for (Eigen::Index j = 0; j < ds.logical.cols(); ++j)
                out << int(ds.logical(i, j)) << (j + 1 < ds.logical.cols() ? "," : "\n");
        }
    }
}

void save_descriptor(const std::string& csv_path, const Dataset& ds) {
    const std::string stem = stem_of(csv_path);
    nlohmann::ordered_json desc;
    desc["label_cols"] =
        (ds.mode == LabelMode::single_label && !ds.class_names.empty()) ? 1 : int(ds.logical.cols());
    desc["mode"] = to_string(ds.mode);
    std::ofstream out(stem + ".json");
    if (!out) throw ParseError("cannot write file: " + stem + ".json");
    out << desc.dump(2) << "\n";
}

void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                     const std::string& col_prefix, int significant_digits) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        out << col_prefix << j << (j + 1 < m.cols() ? "," : "\n");
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << fmt_double(m(i, j), significant_digits) << (j + 1 < m.cols() ? "," : "\n");
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
    RawCsv raw = read_raw_csv(path);
    Eigen::MatrixXd m(Eigen::Index(raw.rows.size()), Eigen::Index(raw.header.size()));
    for (std::size_t i = 0; i < raw.rows.size(); ++i)
        for (std::size_t j = 0; j < raw.header.size(); ++j)
            m(Eigen::Index(i), Eigen::Index(j)) = parse_cell(raw.rows[i][j], i, j);
    return m;
}

}  // namespace flel
