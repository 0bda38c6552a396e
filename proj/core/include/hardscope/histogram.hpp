#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardscope/hardness.hpp"

namespace hardscope {

struct HistogramBin {
    std::string label;
    double lo = 0.0;
    double hi = 0.0;
    /// Exact-value bin (0 or 1) rather than an interval.
    bool exact = false;
    Index count = 0;
    double percent = 0.0;
    double cumulative_percent = 0.0;
};

/// Bins: exactly 0, then [0,0.1) without 0, [0.1,0.2), ..., [0.9,1), then
/// exactly 1 -- twelve in all.
struct HardnessHistogram {
    std::vector<HistogramBin> bins;
    Index total = 0;
};

inline constexpr Index histogram_bin_count = 12;

/// Bin index of v in [0, 1]: 0 for v == 0, 11 for v == 1, else 1 + floor(10 v).
Index histogram_bin(double v);

HardnessHistogram hardness_histogram(std::span<const double> values);

struct HistogramBundle {
    HardnessHistogram all;
    /// Indexed by label when requested.
    std::optional<std::array<HardnessHistogram, 2>> by_class;
};

HistogramBundle hardness_histogram(const HardnessReport& report, bool split_by_class);

} // namespace hardscope
