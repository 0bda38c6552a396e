#include "hardscope/common.hpp"

#include <algorithm>
#include <string>

namespace hardscope {

Matrix::Matrix(Index rows, Index cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(Index rows, Index cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols) {
        throw Error("matrix: expected " + std::to_string(rows * cols) + " values, got " +
                    std::to_string(values_.size()));
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix out;
    for (const auto& r : rows) out.append_row(r);
    return out;
}

std::vector<double> Matrix::column(Index c) const {
    std::vector<double> out(rows_);
    for (Index r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Matrix Matrix::select_rows(std::span<const Index> rows) const {
    Matrix out(rows.size(), cols_);
    for (Index i = 0; i < rows.size(); ++i) {
        if (rows[i] >= rows_) throw Error("matrix: row index out of range");
        std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(rows[i] * cols_), cols_,
                    out.values_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
    }
    return out;
}

Matrix Matrix::select_cols(std::span<const Index> cols) const {
    Matrix out(rows_, cols.size());
    for (Index c : cols) {
        if (c >= cols_) throw Error("matrix: column index out of range");
    }
    for (Index r = 0; r < rows_; ++r) {
        for (Index j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
    }
    return out;
}

void Matrix::append_row(std::span<const double> row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw Error("matrix: row width mismatch");
    values_.insert(values_.end(), row.begin(), row.end());
    ++rows_;
}

OptionString parse_option_string(std::string_view text) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    OptionString out;
    const auto colon = text.find(':');
    out.name = std::string(trim(text.substr(0, colon)));
    if (out.name.empty()) throw Error("option string: missing name in '" + std::string(text) + "'");
    if (colon == std::string_view::npos) return out;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
            throw Error("option string: expected key=value, got '" + std::string(item) + "'");
        }
        out.options[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
    }
    return out;
}

} // namespace hardscope
