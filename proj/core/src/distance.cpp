#include "hardscope/distance.hpp"

#include <algorithm>
#include <cmath>

namespace hardscope {

double euclidean(std::span<const double> a, std::span<const double> b) {
    double ss = 0.0;
    for (Index j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        ss += d * d;
    }
    return std::sqrt(ss);
}

DistanceMatrix::DistanceMatrix(const Matrix& points) : n_(points.rows()), d_(n_ * n_, 0.0) {
    for (Index i = 0; i < n_; ++i) {
        for (Index j = i + 1; j < n_; ++j) {
            const double v = euclidean(points.row(i), points.row(j));
            d_[i * n_ + j] = v;
            d_[j * n_ + i] = v;
            max_ = std::max(max_, v);
        }
    }
}

IndexList nearest_among(const DistanceMatrix& d, Index i, std::span<const Index> candidates, Index k) {
    IndexList pool;
    pool.reserve(candidates.size());
    for (Index c : candidates) {
        if (c != i) pool.push_back(c);
    }
    auto closer = [&](Index a, Index b) {
        const double da = d(i, a);
        const double db = d(i, b);
        return da < db || (da == db && a < b);
    };
    const Index take = std::min(k, pool.size());
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(), closer);
    pool.resize(take);
    return pool;
}

} // namespace hardscope
