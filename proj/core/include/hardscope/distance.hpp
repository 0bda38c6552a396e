#pragma once

#include <span>
#include <vector>

#include "hardscope/common.hpp"
#include "hardscope/dataset.hpp"

namespace hardscope {

double euclidean(std::span<const double> a, std::span<const double> b);

/// Symmetric n x n Euclidean distance table with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(const Matrix& points);

    Index size() const noexcept { return n_; }
    double operator()(Index i, Index j) const noexcept { return d_[i * n_ + j]; }
    std::span<const double> row(Index i) const noexcept { return {d_.data() + i * n_, n_}; }
    double max() const noexcept { return max_; }

private:
    Index n_ = 0;
    std::vector<double> d_;
    double max_ = 0.0;
};

/// The k nearest members of `candidates` to instance i (i itself skipped),
/// ordered by distance with ties going to the lower index. Returns fewer
/// than k when there are not enough candidates.
IndexList nearest_among(const DistanceMatrix& d, Index i, std::span<const Index> candidates, Index k);

inline DistanceMatrix distance_matrix(const Dataset& data) { return DistanceMatrix(data.features()); }

} // namespace hardscope
