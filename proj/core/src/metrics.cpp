#include "hardscope/metrics.hpp"

#include <cmath>

namespace hardscope {

Confusion confusion(std::span<const Label> truth, std::span<const Label> predicted) {
    if (truth.size() != predicted.size()) throw Error("confusion: length mismatch");
    Confusion c;
    for (Index i = 0; i < truth.size(); ++i) {
        if (truth[i] == 1) {
            predicted[i] == 1 ? ++c.tp : ++c.fn;
        } else {
            predicted[i] == 1 ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

double mcc(const Confusion& c) {
    const auto tp = static_cast<double>(c.tp);
    const auto tn = static_cast<double>(c.tn);
    const auto fp = static_cast<double>(c.fp);
    const auto fn = static_cast<double>(c.fn);
    // Grouped so that swapping the class roles permutes factors pairwise only.
    const double a = (tp + fp) * (tn + fn);
    const double b = (tp + fn) * (tn + fp);
    if (a == 0.0 || b == 0.0) return 0.0;
    return (tp * tn - fp * fn) / std::sqrt(a * b);
}

double mcc(std::span<const Label> truth, std::span<const Label> predicted) {
    if (truth.empty()) throw Error("mcc: empty input");
    return mcc(confusion(truth, predicted));
}

double cod_distance(std::span<const Label> a, std::span<const Label> b) {
    if (a.size() != b.size()) throw Error("cod_distance: length mismatch");
    if (a.empty()) throw Error("cod_distance: empty input");
    Index differ = 0;
    for (Index i = 0; i < a.size(); ++i) differ += a[i] != b[i] ? 1 : 0;
    return static_cast<double>(differ) / static_cast<double>(a.size());
}

} // namespace hardscope
