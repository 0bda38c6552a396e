#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hardscope/dataset.hpp"

namespace hardscope {

struct LoadOptions {
    /// Column name or zero-based index; defaults to the last column.
    std::optional<std::string> label_column;
    /// Raw label value mapped to 1; defaults to the rarer value.
    std::optional<std::string> positive_label;
    /// Columns (names or indices) ignored entirely, e.g. PROMISE "name"/"version".
    std::vector<std::string> drop_columns;
    /// Treat a numeric label as positive when > 0 (bug counts).
    bool binarize_counts = false;
};

/// Reads a CSV (header row) or ARFF-lite file into a Dataset.
/// Row numbers in error messages are 1-based data rows.
Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});

Dataset read_csv(std::istream& in, const LoadOptions& options = {}, std::string id = "stream");
Dataset read_arff(std::istream& in, const LoadOptions& options = {}, std::string id = "stream");

/// Writes features plus a trailing "label" column with 0/1 values.
void write_csv(std::ostream& out, const Dataset& data, std::string_view label_name = "label");
void save_csv(const std::filesystem::path& path, const Dataset& data,
              std::string_view label_name = "label");

} // namespace hardscope
