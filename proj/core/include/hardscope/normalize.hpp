#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hardscope/dataset.hpp"

namespace hardscope {

enum class NormKind { standard, minmax, none };

std::string_view to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view text);

/// Per-feature affine statistics fitted on training data.
/// Transformed value = (x - center) / scale; features whose scale is zero map to 0.
struct NormalizationSpec {
    NormKind kind = NormKind::none;
    std::vector<double> center;
    std::vector<double> scale;

    Matrix apply(const Matrix& data) const;
    Dataset apply(const Dataset& data) const;
    /// Undoes apply() for features with nonzero scale.
    Matrix invert(const Matrix& data) const;
};

/// Standard kind uses the population standard deviation.
NormalizationSpec fit_normalizer(const Dataset& train, NormKind kind);
NormalizationSpec fit_normalizer(const Matrix& train, NormKind kind);

inline Dataset standardize(const Dataset& data) {
    return fit_normalizer(data, NormKind::standard).apply(data);
}

} // namespace hardscope
