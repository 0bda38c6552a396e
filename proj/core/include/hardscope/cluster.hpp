#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hardscope/common.hpp"
#include "hardscope/learners.hpp"

namespace hardscope {

/// Symmetric p x p table of pairwise COD values with zero diagonal.
class CodMatrix {
public:
    /// Validates shape, symmetry, zero diagonal and the [0, 1] range.
    CodMatrix(std::vector<std::string> names, Matrix values);

    /// COD between every pair of prediction vectors.
    static CodMatrix from_predictions(std::vector<std::string> names,
                                      const std::vector<std::vector<Label>>& predictions);

    Index size() const noexcept { return values_.rows(); }
    double operator()(Index i, Index j) const noexcept { return values_(i, j); }
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
    Matrix values_;
};

struct Merge {
    /// Cluster ids: 0..p-1 are leaves, p + k is the cluster made by merge k.
    Index left = 0;
    Index right = 0;
    double height = 0.0;
    Index size = 0;
};

struct Dendrogram {
    std::vector<std::string> leaves;
    std::vector<Merge> merges;

    /// Groups of leaf indices joined by merges with height <= cut, ordered by
    /// their smallest member.
    std::vector<IndexList> cut(double height) const;

    /// {"leaves": [...], "root": nested {"name"} / {"height", "size", "children"}}.
    nlohmann::json to_json() const;
    /// Branch length = parent height - child height; leaves sit at height 0.
    std::string to_newick() const;
};

enum class Linkage { average };

struct PoolClustering {
    Dendrogram dendrogram;
    std::vector<IndexList> clusters;
};

/// Agglomerative clustering (UPGMA for average linkage). Ties between equally
/// close pairs go to the pair with the smallest (lower id, higher id).
PoolClustering cluster_pool(const CodMatrix& cod, Linkage linkage = Linkage::average, double cut = 0.13);

} // namespace hardscope
