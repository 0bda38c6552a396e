#pragma once

#include <span>
#include <vector>

#include "hardscope/common.hpp"
#include "hardscope/rng.hpp"

namespace hardscope {

enum class Criterion { gini, entropy };

struct TreeOptions {
    Criterion criterion = Criterion::gini;
    /// Negative means unlimited; 0 yields a single leaf.
    int max_depth = -1;
    Index min_samples_split = 2;
    Index min_samples_leaf = 1;
    /// Features examined per split; 0 or >= m means all, in index order.
    Index max_features = 0;
    /// Expand only one child per level, turning the other into a leaf
    /// (a decision list).
    bool decision_list = false;
};

struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int depth = 0;
    Label prediction = 0;
    /// Training weight per class reaching this node.
    double weight[2] = {0.0, 0.0};
    /// Training instance count per class reaching this node.
    Index count[2] = {0, 0};

    bool is_leaf() const noexcept { return left < 0; }
    Index size() const noexcept { return count[0] + count[1]; }
};

/// Binary axis-aligned classification tree.
///
/// Splits take the form x[feature] <= threshold with thresholds at midpoints
/// between consecutive distinct values. The best split minimizes the weighted
/// child impurity; ties go to the lower feature index, then the lower
/// threshold. Impure nodes split even when the impurity does not decrease, so
/// an unlimited tree separates every pair of distinct rows. Leaves predict the
/// weighted majority with ties going to class 0.
class DecisionTree {
public:
    /// Fits on `rows` of `x` (all rows when empty). `weights` may be empty
    /// (unit weights). `rng` is only consumed when max_features subsamples.
    static DecisionTree fit(const Matrix& x, std::span<const Label> y, std::span<const double> weights,
                            const TreeOptions& options, Rng* rng = nullptr,
                            std::span<const Index> rows = {});

    Label predict(std::span<const double> row) const;
    /// Weighted class-1 fraction at the leaf reached by `row`.
    double positive_fraction(std::span<const double> row) const;
    /// Node id of the leaf reached by `row`.
    int leaf_of(std::span<const double> row) const;

    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    const TreeNode& node(int id) const { return nodes_.at(static_cast<Index>(id)); }

    /// Reachable leaf ids in depth-first order.
    std::vector<int> leaves() const;
    int max_leaf_depth() const;

    /// Total weighted impurity decrease attributed to each feature.
    const std::vector<double>& impurity_decrease() const noexcept { return importance_; }

    /// Reduced-error pruning: bottom-up, a subtree collapses to a leaf when
    /// that does not increase the error on the holdout rows.
    void prune_reduced_error(const Matrix& x, std::span<const Label> y, std::span<const Index> rows);

    /// Replaces per-node class counts with those of `rows` routed through the
    /// tree (weights become the counts). Structure and predictions are kept.
    void recount(const Matrix& x, std::span<const Label> y, std::span<const Index> rows);

private:
    int build(const Matrix& x, std::span<const Label> y, std::span<const double> w, IndexList& idx,
              int depth, const TreeOptions& options, Rng* rng);

    std::vector<TreeNode> nodes_;
    std::vector<double> importance_;
    Index num_features_ = 0;
};

/// Impurity of a node with per-class weights (w0, w1), scaled by its total
/// weight.
double weighted_impurity(Criterion criterion, double w0, double w1);

} // namespace hardscope
