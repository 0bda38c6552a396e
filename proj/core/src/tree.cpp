#include "hardscope/tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace hardscope {

double weighted_impurity(Criterion criterion, double w0, double w1) {
    const double total = w0 + w1;
    if (total <= 0.0) return 0.0;
    if (criterion == Criterion::gini) return total - (w0 * w0 + w1 * w1) / total;
    double h = 0.0;
    for (double w : {w0, w1}) {
        if (w > 0.0) h -= w * std::log2(w / total);
    }
    return h;
}

namespace {

struct Split {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;
    double left_impurity = 0.0;
    double right_impurity = 0.0;
    double left_weight = 0.0;
    double right_weight = 0.0;
};

struct Entry {
    double value;
    Label label;
    double weight;
};

Split best_split_on(const Matrix& x, std::span<const Label> y, std::span<const double> w,
                    const IndexList& idx, Index feature, const TreeOptions& options,
                    std::vector<Entry>& scratch, Split best) {
    scratch.clear();
    double total[2] = {0.0, 0.0};
    for (Index i : idx) {
        const double wi = w.empty() ? 1.0 : w[i];
        scratch.push_back({x(i, feature), y[i], wi});
        total[y[i]] += wi;
    }
    std::stable_sort(scratch.begin(), scratch.end(),
                     [](const Entry& a, const Entry& b) { return a.value < b.value; });
    double left[2] = {0.0, 0.0};
    const Index n = scratch.size();
    for (Index p = 1; p < n; ++p) {
        left[scratch[p - 1].label] += scratch[p - 1].weight;
        const double a = scratch[p - 1].value;
        const double b = scratch[p].value;
        if (!(a < b)) continue;
        if (p < options.min_samples_leaf || n - p < options.min_samples_leaf) continue;
        const double l_imp = weighted_impurity(options.criterion, left[0], left[1]);
        const double r_imp = weighted_impurity(options.criterion, total[0] - left[0], total[1] - left[1]);
        const double score = l_imp + r_imp;
        if (!best.found || score < best.score) {
            double threshold = a + (b - a) / 2.0;
            if (!(threshold < b)) threshold = a;
            best = {true,  static_cast<int>(feature), threshold, score, l_imp, r_imp,
                    left[0] + left[1], total[0] + total[1] - left[0] - left[1]};
        }
    }
    return best;
}

} // namespace

DecisionTree DecisionTree::fit(const Matrix& x, std::span<const Label> y, std::span<const double> weights,
                               const TreeOptions& options, Rng* rng, std::span<const Index> rows) {
    if (y.size() != x.rows()) throw Error("tree: label count mismatch");
    if (!weights.empty() && weights.size() != x.rows()) throw Error("tree: weight count mismatch");
    DecisionTree tree;
    tree.num_features_ = x.cols();
    tree.importance_.assign(x.cols(), 0.0);
    IndexList idx;
    if (rows.empty()) {
        idx.resize(x.rows());
        std::iota(idx.begin(), idx.end(), Index{0});
    } else {
        idx.assign(rows.begin(), rows.end());
    }
    if (idx.empty()) throw Error("tree: no training rows");
    tree.build(x, y, weights, idx, 0, options, rng);
    return tree;
}

int DecisionTree::build(const Matrix& x, std::span<const Label> y, std::span<const double> w, IndexList& idx,
                        int depth, const TreeOptions& options, Rng* rng) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    {
        TreeNode& node = nodes_.back();
        node.depth = depth;
        for (Index i : idx) {
            node.weight[y[i]] += w.empty() ? 1.0 : w[i];
            ++node.count[y[i]];
        }
        node.prediction = node.weight[1] > node.weight[0] ? 1 : 0;
    }
    const double w0 = nodes_[id].weight[0];
    const double w1 = nodes_[id].weight[1];
    const bool pure = w0 <= 0.0 || w1 <= 0.0;
    const bool depth_ok = options.max_depth < 0 || depth < options.max_depth;
    if (pure || !depth_ok || idx.size() < std::max<Index>(2, options.min_samples_split)) return id;

    const Index m = x.cols();
    IndexList candidates;
    IndexList rest;
    if (options.max_features > 0 && options.max_features < m) {
        if (rng == nullptr) throw Error("tree: feature subsampling requires a generator");
        candidates = rng->sample_without_replacement(m, options.max_features);
        std::vector<bool> chosen(m, false);
        for (Index f : candidates) chosen[f] = true;
        for (Index f = 0; f < m; ++f) {
            if (!chosen[f]) rest.push_back(f);
        }
    } else {
        candidates.resize(m);
        std::iota(candidates.begin(), candidates.end(), Index{0});
    }

    std::vector<Entry> scratch;
    scratch.reserve(idx.size());
    Split best;
    for (Index f : candidates) best = best_split_on(x, y, w, idx, f, options, scratch, best);
    // Like the usual subsampling trees: keep looking past the sample when
    // every sampled feature is constant here.
    for (Index k = 0; !best.found && k < rest.size(); ++k) {
        best = best_split_on(x, y, w, idx, rest[k], options, scratch, best);
    }
    if (!best.found) return id;

    importance_[static_cast<Index>(best.feature)] += weighted_impurity(options.criterion, w0, w1) - best.score;

    IndexList left_idx;
    IndexList right_idx;
    for (Index i : idx) {
        (x(i, static_cast<Index>(best.feature)) <= best.threshold ? left_idx : right_idx).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();

    nodes_[id].feature = best.feature;
    nodes_[id].threshold = best.threshold;

    if (options.decision_list) {
        // The purer side becomes a rule leaf (ties: left); the other side
        // carries the list forward.
        const double l_norm = best.left_weight > 0.0 ? best.left_impurity / best.left_weight : 0.0;
        const double r_norm = best.right_weight > 0.0 ? best.right_impurity / best.right_weight : 0.0;
        const bool expand_left = r_norm < l_norm;
        TreeOptions leaf_options = options;
        leaf_options.max_depth = depth + 1;
        const int l = build(x, y, w, left_idx, depth + 1, expand_left ? options : leaf_options, rng);
        const int r = build(x, y, w, right_idx, depth + 1, expand_left ? leaf_options : options, rng);
        nodes_[id].left = l;
        nodes_[id].right = r;
        return id;
    }
    const int l = build(x, y, w, left_idx, depth + 1, options, rng);
    const int r = build(x, y, w, right_idx, depth + 1, options, rng);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
}

int DecisionTree::leaf_of(std::span<const double> row) const {
    if (row.size() != num_features_) throw Error("tree: row width mismatch");
    int id = 0;
    while (!nodes_[static_cast<Index>(id)].is_leaf()) {
        const TreeNode& n = nodes_[static_cast<Index>(id)];
        id = row[static_cast<Index>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return id;
}

Label DecisionTree::predict(std::span<const double> row) const {
    return nodes_[static_cast<Index>(leaf_of(row))].prediction;
}

double DecisionTree::positive_fraction(std::span<const double> row) const {
    const TreeNode& n = nodes_[static_cast<Index>(leaf_of(row))];
    const double total = n.weight[0] + n.weight[1];
    return total > 0.0 ? n.weight[1] / total : 0.0;
}

std::vector<int> DecisionTree::leaves() const {
    std::vector<int> out;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        const TreeNode& n = nodes_[static_cast<Index>(id)];
        if (n.is_leaf()) {
            out.push_back(id);
        } else {
            stack.push_back(n.right);
            stack.push_back(n.left);
        }
    }
    return out;
}

int DecisionTree::max_leaf_depth() const {
    int depth = 0;
    for (int id : leaves()) depth = std::max(depth, nodes_[static_cast<Index>(id)].depth);
    return depth;
}

void DecisionTree::prune_reduced_error(const Matrix& x, std::span<const Label> y, std::span<const Index> rows) {
    std::vector<std::array<Index, 2>> holdout(nodes_.size(), {0, 0});
    for (Index i : rows) {
        int id = 0;
        for (;;) {
            ++holdout[static_cast<Index>(id)][y[i]];
            const TreeNode& n = nodes_[static_cast<Index>(id)];
            if (n.is_leaf()) break;
            id = x(i, static_cast<Index>(n.feature)) <= n.threshold ? n.left : n.right;
        }
    }
    // Post-order walk returning the holdout error of the (possibly pruned) subtree.
    auto prune = [&](auto&& self, int id) -> Index {
        TreeNode& n = nodes_[static_cast<Index>(id)];
        const auto& h = holdout[static_cast<Index>(id)];
        const Index as_leaf = h[1 - n.prediction];
        if (n.is_leaf()) return as_leaf;
        const Index subtree = self(self, n.left) + self(self, n.right);
        if (as_leaf <= subtree) {
            nodes_[static_cast<Index>(id)].left = -1;
            nodes_[static_cast<Index>(id)].right = -1;
            nodes_[static_cast<Index>(id)].feature = -1;
            return as_leaf;
        }
        return subtree;
    };
    prune(prune, 0);
}

void DecisionTree::recount(const Matrix& x, std::span<const Label> y, std::span<const Index> rows) {
    for (auto& n : nodes_) {
        n.count[0] = n.count[1] = 0;
        n.weight[0] = n.weight[1] = 0.0;
    }
    for (Index i : rows) {
        int id = 0;
        for (;;) {
            TreeNode& n = nodes_[static_cast<Index>(id)];
            ++n.count[y[i]];
            n.weight[y[i]] += 1.0;
            if (n.is_leaf()) break;
            id = x(i, static_cast<Index>(n.feature)) <= n.threshold ? n.left : n.right;
        }
    }
}

} // namespace hardscope
