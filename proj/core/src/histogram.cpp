#include "hardscope/histogram.hpp"

#include <cmath>
#include <cstdio>

namespace hardscope {

Index histogram_bin(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error("histogram: value outside [0, 1]");
    if (v == 0.0) return 0;
    if (v == 1.0) return histogram_bin_count - 1;
    return 1 + static_cast<Index>(std::floor(10.0 * v));
}

HardnessHistogram hardness_histogram(std::span<const double> values) {
    if (values.empty()) throw Error("histogram: no values");
    HardnessHistogram h;
    h.total = values.size();
    h.bins.resize(histogram_bin_count);
    h.bins.front() = {"0", 0.0, 0.0, true};
    h.bins.back() = {"1", 1.0, 1.0, true};
    for (Index b = 1; b + 1 < histogram_bin_count; ++b) {
        const double lo = static_cast<double>(b - 1) / 10.0;
        const double hi = static_cast<double>(b) / 10.0;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%.1f,%.1f)", b == 1 ? "(" : "[", lo, hi);
        h.bins[b] = {buf, lo, hi, false};
    }
    for (double v : values) ++h.bins[histogram_bin(v)].count;
    Index running = 0;
    for (auto& bin : h.bins) {
        running += bin.count;
        if (h.total > 0) {
            bin.percent = 100.0 * static_cast<double>(bin.count) / static_cast<double>(h.total);
            bin.cumulative_percent = 100.0 * static_cast<double>(running) / static_cast<double>(h.total);
        }
    }
    return h;
}

HistogramBundle hardness_histogram(const HardnessReport& report, bool split_by_class) {
    if (report.ih.empty()) throw Error("histogram: empty report");
    HistogramBundle out{hardness_histogram(report.ih), std::nullopt};
    if (split_by_class) {
        std::array<std::vector<double>, 2> parts;
        for (Index i = 0; i < report.ih.size(); ++i) parts[report.labels[i]].push_back(report.ih[i]);
        out.by_class = std::array<HardnessHistogram, 2>{hardness_histogram(parts[0]), hardness_histogram(parts[1])};
    }
    return out;
}

} // namespace hardscope
