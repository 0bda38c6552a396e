#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hardscope {

/// Base exception for every contract violation raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Binary class label. 1 is the positive (by default minority) class.
using Label = int;

using Index = std::size_t;
using IndexList = std::vector<Index>;

/// Dense row-major table of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(Index rows, Index cols, double fill = 0.0);
    Matrix(Index rows, Index cols, std::vector<double> values);

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    double operator()(Index r, Index c) const noexcept { return values_[r * cols_ + c]; }
    double& operator()(Index r, Index c) noexcept { return values_[r * cols_ + c]; }

    std::span<const double> row(Index r) const noexcept {
        return {values_.data() + r * cols_, cols_};
    }
    std::span<double> row(Index r) noexcept { return {values_.data() + r * cols_, cols_}; }

    std::vector<double> column(Index c) const;

    const std::vector<double>& values() const noexcept { return values_; }

    Matrix select_rows(std::span<const Index> rows) const;
    Matrix select_cols(std::span<const Index> cols) const;

    /// Appends one row; its width must equal cols() (or set cols() when empty).
    void append_row(std::span<const double> row);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> values_;
};

/// "name:key=value,key=value" as used by the resample and feature-select
/// flags. The option part is optional.
struct OptionString {
    std::string name;
    std::map<std::string, std::string> options;
};

OptionString parse_option_string(std::string_view text);

} // namespace hardscope
