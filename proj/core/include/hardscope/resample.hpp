#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardscope/dataset.hpp"

namespace hardscope {

enum class ResampleMethod { smote, border_smote, rus, smote_tomek, smote_enn };

std::string_view to_string(ResampleMethod method);
ResampleMethod parse_resample_method(std::string_view text);

struct ResampleSpec {
    ResampleMethod method = ResampleMethod::smote;
    /// Minority neighbours used for interpolation.
    Index k = 5;
    std::uint64_t seed = 42;
    /// Target minority / majority count ratio after resampling.
    double ratio = 1.0;
};

/// Parses "method[:k=..,seed=..,ratio=..]".
ResampleSpec parse_resample_spec(std::string_view text);
std::string to_string(const ResampleSpec& spec);

struct ResampleResult {
    explicit ResampleResult(Dataset d, Index synthetic_rows = 0, Index removed_rows = 0)
        : data(std::move(d)), synthetic(synthetic_rows), removed(removed_rows) {}

    Dataset data;
    /// Number of synthetic rows appended after the originals.
    Index synthetic = 0;
    /// Rows removed by cleaning (hybrids) or undersampling.
    Index removed = 0;
    bool warning = false;
    std::string message;
};

/// Applies the resampler. Oversamplers keep every original row first, in
/// order, and append synthetic rows; RUS keeps the surviving rows in their
/// original order.
///
/// Hybrids clean the oversampled set; when cleaning would eliminate a class
/// the balanced pre-cleaning set is returned with `warning` set.
ResampleResult resample(const Dataset& train, const ResampleSpec& spec);

/// SMOTE to the given ratio. Equivalent to resample() with method smote.
Dataset smote(const Dataset& train, Index k = 5, std::uint64_t seed = 42, double ratio = 1.0);

/// Index pairs (i < j) of Tomek links: mutual nearest neighbours with
/// different labels.
std::vector<std::pair<Index, Index>> tomek_links(const Dataset& data);

/// Instances whose label differs from the majority label of their k nearest
/// neighbours (ties keep the instance).
IndexList enn_misclassified(const Dataset& data, Index k = 3);

} // namespace hardscope
