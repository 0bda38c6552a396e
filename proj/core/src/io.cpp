#include "hardscope/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

namespace hardscope {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string> split_record(std::string_view line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (ch == '"') {
            if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
                cell.push_back('"');
                ++i;
            } else {
                quoted = !quoted;
            }
        } else if (ch == ',' && !quoted) {
            cells.push_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(ch);
        }
    }
    cells.push_back(trim(cell));
    return cells;
}

bool parse_double(std::string_view text, double& out) {
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::optional<Index> find_column(const std::vector<std::string>& header, const std::string& key) {
    for (Index j = 0; j < header.size(); ++j) {
        if (header[j] == key) return j;
    }
    if (!key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); })) {
        const auto idx = static_cast<Index>(std::stoull(key));
        if (idx < header.size()) return idx;
    }
    return std::nullopt;
}

// Orders raw label strings numerically when both parse, else lexically.
bool label_less(const std::string& a, const std::string& b) {
    double x = 0.0;
    double y = 0.0;
    if (parse_double(a, x) && parse_double(b, y)) return x < y;
    return a < b;
}

Dataset assemble(const std::vector<std::string>& header,
                 const std::vector<std::pair<Index, std::vector<std::string>>>& records,
                 const LoadOptions& options, std::string id) {
    if (header.empty()) throw Error(id + ": missing header");
    if (records.empty()) throw Error(id + ": empty dataset");

    Index label_col = header.size() - 1;
    if (options.label_column) {
        const auto found = find_column(header, *options.label_column);
        if (!found) throw Error(id + ": label column '" + *options.label_column + "' not found");
        label_col = *found;
    }
    std::vector<bool> dropped(header.size(), false);
    for (const auto& key : options.drop_columns) {
        const auto found = find_column(header, key);
        if (!found) throw Error(id + ": column '" + key + "' not found");
        dropped[*found] = true;
    }
    IndexList feature_cols;
    std::vector<std::string> names;
    for (Index j = 0; j < header.size(); ++j) {
        if (j == label_col || dropped[j]) continue;
        feature_cols.push_back(j);
        names.push_back(header[j]);
    }
    if (feature_cols.empty()) throw Error(id + ": no feature columns");

    Matrix features(records.size(), feature_cols.size());
    std::vector<std::string> raw_labels(records.size());
    for (Index r = 0; r < records.size(); ++r) {
        const auto& [line_no, cells] = records[r];
        if (cells.size() != header.size()) {
            throw Error(id + ": row " + std::to_string(r + 1) + " (line " + std::to_string(line_no) +
                        ") has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
        }
        for (Index j = 0; j < feature_cols.size(); ++j) {
            const auto& cell = cells[feature_cols[j]];
            double v = 0.0;
            if (!parse_double(cell, v)) {
                throw Error(id + ": row " + std::to_string(r + 1) + ", column '" + names[j] +
                            "': non-numeric or missing value '" + cell + "'");
            }
            features(r, j) = v;
        }
        std::string label = unquote(cells[label_col]);
        if (options.binarize_counts) {
            double v = 0.0;
            if (!parse_double(label, v)) {
                throw Error(id + ": row " + std::to_string(r + 1) + ": label '" + label +
                            "' is not numeric");
            }
            label = v > 0.0 ? "1" : "0";
        }
        raw_labels[r] = std::move(label);
    }

    std::map<std::string, Index> counts;
    for (const auto& l : raw_labels) ++counts[l];
    if (counts.size() > 2) {
        throw Error(id + ": label column has " + std::to_string(counts.size()) +
                    " distinct values, expected 2");
    }
    if (counts.size() < 2) throw Error(id + ": label column has a single value");

    auto it = counts.begin();
    const auto first = *it++;
    const auto second = *it;
    std::string positive;
    if (options.positive_label) {
        positive = *options.positive_label;
        if (!counts.contains(positive)) {
            throw Error(id + ": positive label '" + positive + "' does not occur");
        }
    } else if (first.second != second.second) {
        positive = first.second < second.second ? first.first : second.first;
    } else {
        positive = label_less(first.first, second.first) ? second.first : first.first;
    }
    std::vector<Label> labels(raw_labels.size());
    for (Index r = 0; r < raw_labels.size(); ++r) labels[r] = raw_labels[r] == positive ? 1 : 0;
    return Dataset(std::move(features), std::move(labels), std::move(names), std::move(id));
}

} // namespace

Dataset read_csv(std::istream& in, const LoadOptions& options, std::string id) {
    std::string line;
    std::vector<std::string> header;
    std::vector<std::pair<Index, std::vector<std::string>>> records;
    Index line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto cells = split_record(line);
        if (header.empty()) {
            for (auto& c : cells) c = unquote(c);
            header = std::move(cells);
        } else {
            records.emplace_back(line_no, std::move(cells));
        }
    }
    return assemble(header, records, options, std::move(id));
}

Dataset read_arff(std::istream& in, const LoadOptions& options, std::string id) {
    std::string line;
    std::vector<std::string> header;
    std::vector<std::pair<Index, std::vector<std::string>>> records;
    bool in_data = false;
    Index line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '%') continue;
        if (!in_data) {
            std::string lower = t;
            std::transform(lower.begin(), lower.end(), lower.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (lower.starts_with("@relation")) continue;
            if (lower.starts_with("@attribute")) {
                std::string rest = trim(std::string_view(t).substr(10));
                std::string name;
                if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
                    const auto close = rest.find(rest.front(), 1);
                    if (close == std::string::npos) throw Error(id + ": bad @attribute line " + std::to_string(line_no));
                    name = rest.substr(1, close - 1);
                } else {
                    const auto space = rest.find_first_of(" \t");
                    name = rest.substr(0, space);
                }
                header.push_back(name);
                continue;
            }
            if (lower.starts_with("@data")) {
                in_data = true;
                continue;
            }
            throw Error(id + ": unexpected header line " + std::to_string(line_no));
        }
        records.emplace_back(line_no, split_record(t));
    }
    return assemble(header, records, options, std::move(id));
}

Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset file '" + path.string() + "'");
    const std::string id = path.stem().string();
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".arff") return read_arff(in, options, id);
    return read_csv(in, options, id);
}

void write_csv(std::ostream& out, const Dataset& data, std::string_view label_name) {
    const auto& names = data.feature_names();
    for (Index j = 0; j < names.size(); ++j) out << names[j] << ',';
    out << label_name << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Index i = 0; i < data.size(); ++i) {
        for (double v : data.row(i)) out << v << ',';
        out << data.label(i) << '\n';
    }
}

void save_csv(const std::filesystem::path& path, const Dataset& data, std::string_view label_name) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_csv(out, data, label_name);
}

} // namespace hardscope
