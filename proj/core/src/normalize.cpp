#include "hardscope/normalize.hpp"

#include <algorithm>
#include <cmath>

namespace hardscope {

std::string_view to_string(NormKind kind) {
    switch (kind) {
    case NormKind::standard: return "standard";
    case NormKind::minmax: return "minmax";
    case NormKind::none: return "none";
    }
    return "none";
}

NormKind parse_norm_kind(std::string_view text) {
    if (text == "standard") return NormKind::standard;
    if (text == "minmax") return NormKind::minmax;
    if (text == "none") return NormKind::none;
    throw Error("unknown normalization '" + std::string(text) + "'");
}

NormalizationSpec fit_normalizer(const Matrix& train, NormKind kind) {
    NormalizationSpec spec;
    spec.kind = kind;
    const Index m = train.cols();
    const Index n = train.rows();
    spec.center.assign(m, 0.0);
    spec.scale.assign(m, 1.0);
    if (kind == NormKind::none || n == 0) return spec;
    for (Index j = 0; j < m; ++j) {
        if (kind == NormKind::standard) {
            double mean = 0.0;
            for (Index i = 0; i < n; ++i) mean += train(i, j);
            mean /= static_cast<double>(n);
            double ss = 0.0;
            for (Index i = 0; i < n; ++i) {
                const double d = train(i, j) - mean;
                ss += d * d;
            }
            spec.center[j] = mean;
            spec.scale[j] = std::sqrt(ss / static_cast<double>(n));
        } else {
            double lo = train(0, j);
            double hi = lo;
            for (Index i = 1; i < n; ++i) {
                lo = std::min(lo, train(i, j));
                hi = std::max(hi, train(i, j));
            }
            spec.center[j] = lo;
            spec.scale[j] = hi - lo;
        }
    }
    return spec;
}

NormalizationSpec fit_normalizer(const Dataset& train, NormKind kind) {
    return fit_normalizer(train.features(), kind);
}

Matrix NormalizationSpec::apply(const Matrix& data) const {
    if (kind == NormKind::none) return data;
    if (data.cols() != center.size()) throw Error("normalizer: feature count mismatch");
    Matrix out(data.rows(), data.cols());
    for (Index i = 0; i < data.rows(); ++i) {
        for (Index j = 0; j < data.cols(); ++j) {
            out(i, j) = scale[j] > 0.0 ? (data(i, j) - center[j]) / scale[j] : 0.0;
        }
    }
    return out;
}

Dataset NormalizationSpec::apply(const Dataset& data) const {
    if (kind == NormKind::none) return data;
    return data.with_features(apply(data.features()));
}

Matrix NormalizationSpec::invert(const Matrix& data) const {
    if (kind == NormKind::none) return data;
    if (data.cols() != center.size()) throw Error("normalizer: feature count mismatch");
    Matrix out(data.rows(), data.cols());
    for (Index i = 0; i < data.rows(); ++i) {
        for (Index j = 0; j < data.cols(); ++j) {
            out(i, j) = scale[j] > 0.0 ? data(i, j) * scale[j] + center[j] : center[j];
        }
    }
    return out;
}

} // namespace hardscope
