#include "flel/arff.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace flel {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                          (s.front() == '"' && s.back() == '"')))
        return s.substr(1, s.size() - 2);
    return s;
}

struct Attribute {
    std::string name;
    bool nominal01 = false;  // nominal {0,1}; otherwise numeric
};

std::vector<std::string> split_csv_like(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    char quote_ch = 0;
    for (char ch : line) {
        if (quoted) {
            if (ch == quote_ch)
                quoted = false;
            else
                cur.push_back(ch);
        } else if (ch == '\'' || ch == '"') {
            quoted = true;
            quote_ch = ch;
        } else if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace

std::vector<std::string> parse_mulan_xml_labels(const std::string& xml_path) {
    std::ifstream in(xml_path);
    if (!in) throw ParseError("cannot open XML label file: " + xml_path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::vector<std::string> labels;
    std::size_t pos = 0;
    while ((pos = text.find("<label", pos)) != std::string::npos) {
        std::size_t np = text.find("name=", pos);
        if (np == std::string::npos) break;
        np += 5;
        char q = text[np];
        if (q != '"' && q != '\'') throw ParseError("malformed label name in " + xml_path);
        std::size_t end = text.find(q, np + 1);
        labels.push_back(text.substr(np + 1, end - np - 1));
        pos = end;
    }
    if (labels.empty()) throw ParseError("no <label name=...> entries in " + xml_path);
    return labels;
}

Dataset load_arff(const std::string& arff_path, const std::string& xml_path, int label_count,
                  LabelMode mode) {
    std::ifstream in(arff_path);
    if (!in) throw ParseError("cannot open ARFF file: " + arff_path);

    std::vector<Attribute> attrs;
    std::vector<std::vector<double>> rows;
    bool in_data = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        if (!in_data) {
            std::string low = lower(t);
            if (low.rfind("@relation", 0) == 0) continue;
            if (low.rfind("@attribute", 0) == 0) {
                std::string rest = trim(t.substr(10));
                std::string name;
                std::size_t type_pos;
                if (!rest.empty() && (rest[0] == '\'' || rest[0] == '"')) {
                    std::size_t end = rest.find(rest[0], 1);
                    if (end == std::string::npos)
                        throw ParseError(arff_path + ":" + std::to_string(lineno) +
                                         ": unterminated attribute name");
                    name = rest.substr(1, end - 1);
                    type_pos = end + 1;
                } else {
                    type_pos = rest.find_first_of(" \t");
                    if (type_pos == std::string::npos)
                        throw ParseError(arff_path + ":" + std::to_string(lineno) +
                                         ": attribute without a type");
                    name = rest.substr(0, type_pos);
                }
                std::string type = lower(trim(rest.substr(type_pos)));
                Attribute attr;
                attr.name = name;
                if (type == "numeric" || type == "real" || type == "integer") {
                    attr.nominal01 = false;
                } else if (!type.empty() && type[0] == '{') {
                    std::string body = type.substr(1, type.find('}') - 1);
                    std::set<std::string> values;
                    for (auto& v : split_csv_like(body)) values.insert(unquote(v));
                    if (values != std::set<std::string>{"0", "1"})
                        throw ParseError(arff_path + ": nominal attribute '" + name +
                                         "' is not {0,1}; unsupported");
                    attr.nominal01 = true;
                } else {
                    throw ParseError(arff_path + ": unsupported attribute type '" + type +
                                     "' for '" + name + "'");
                }
                attrs.push_back(attr);
                continue;
            }
            if (low.rfind("@data", 0) == 0) {
                if (attrs.empty()) throw ParseError(arff_path + ": @data before any @attribute");
                in_data = true;
                continue;
            }
            throw ParseError(arff_path + ":" + std::to_string(lineno) + ": unexpected header line");
        }
        std::vector<double> row(attrs.size(), 0.0);
        if (t[0] == '{') {
            // sparse row: {index value, index value, ...}
            std::string body = trim(t.substr(1, t.rfind('}') - 1));
            if (!body.empty()) {
                for (auto& entry : split_csv_like(body)) {
                    std::istringstream es(entry);
                    std::size_t idx;
                    double val;
                    if (!(es >> idx >> val) || idx >= attrs.size())
                        throw ParseError(arff_path + ":" + std::to_string(lineno) +
                                         ": bad sparse entry '" + entry + "'");
                    row[idx] = val;
                }
            }
        } else {
            auto cells = split_csv_like(t);
            if (cells.size() != attrs.size())
                throw ParseError(arff_path + ":" + std::to_string(lineno) + ": expected " +
                                 std::to_string(attrs.size()) + " values, got " +
                                 std::to_string(cells.size()));
            for (std::size_t j = 0; j < cells.size(); ++j) {
                try {
                    row[j] = std::stod(unquote(cells[j]));
                } catch (const std::exception&) {
                    throw ParseError(arff_path + ":" + std::to_string(lineno) +
                                     ": malformed value '" + cells[j] + "' in column " +
                                     std::to_string(j));
                }
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(arff_path + ": no data rows");

    std::set<std::size_t> label_idx;
    if (!xml_path.empty()) {
        for (const auto& label : parse_mulan_xml_labels(xml_path)) {
            auto it = std::find_if(attrs.begin(), attrs.end(),
                                   [&](const Attribute& a) { return a.name == label; });
            if (it == attrs.end())
                throw ParseError("label '" + label + "' from " + xml_path + " not in " + arff_path);
            label_idx.insert(std::size_t(it - attrs.begin()));
        }
    } else {
        if (label_count < 1 || std::size_t(label_count) >= attrs.size())
            throw PlanError("label_count must lie in [1, attribute count)");
        for (std::size_t j = attrs.size() - std::size_t(label_count); j < attrs.size(); ++j)
            label_idx.insert(j);
    }

    Dataset ds;
    ds.mode = mode;
    ds.name = arff_path;
    const Eigen::Index n = Eigen::Index(rows.size());
    ds.features.resize(n, Eigen::Index(attrs.size() - label_idx.size()));
    ds.logical.resize(n, Eigen::Index(label_idx.size()));
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index f = 0, l = 0;
        for (std::size_t j = 0; j < attrs.size(); ++j) {
            if (label_idx.count(j))
                ds.logical(i, l++) = rows[std::size_t(i)][j];
            else
                ds.features(i, f++) = rows[std::size_t(i)][j];
        }
    }
    validate_dataset(ds);
    return ds;
}

}  // namespace flel
