#include "hardscope/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hardscope/normalize.hpp"
#include "hardscope/rng.hpp"
#include "hardscope/tree.hpp"

namespace hardscope {

std::string_view to_string(InstanceMeasure measure) {
    switch (measure) {
    case InstanceMeasure::kDN: return "kDN";
    case InstanceMeasure::DS: return "DS";
    case InstanceMeasure::DCP: return "DCP";
    case InstanceMeasure::TD_P: return "TD_P";
    case InstanceMeasure::TD_U: return "TD_U";
    case InstanceMeasure::CL: return "CL";
    case InstanceMeasure::MV: return "MV";
    case InstanceMeasure::CB: return "CB";
    case InstanceMeasure::F1_i: return "F1_i";
    case InstanceMeasure::N1_i: return "N1_i";
    case InstanceMeasure::N2_i: return "N2_i";
    case InstanceMeasure::LSC_i: return "LSC_i";
    case InstanceMeasure::LSR: return "LSR";
    case InstanceMeasure::U: return "U";
    case InstanceMeasure::H: return "H";
    }
    return "kDN";
}

InstanceMeasure parse_instance_measure(std::string_view text) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return out;
    };
    const std::string want = lower(text);
    for (InstanceMeasure m : all_instance_measures) {
        const std::string name = lower(to_string(m));
        if (want == name) return m;
        if (name.ends_with("_i") && want == name.substr(0, name.size() - 2)) return m;
    }
    if (want == "tdp") return InstanceMeasure::TD_P;
    if (want == "tdu") return InstanceMeasure::TD_U;
    throw Error("unknown instance measure '" + std::string(text) + "'");
}

Dataset measure_space(const Dataset& data, const MeasureOptions& options) {
    return options.standardize ? standardize(data) : data;
}

std::vector<MstEdge> minimum_spanning_tree(const DistanceMatrix& d) {
    const Index n = d.size();
    std::vector<MstEdge> edges;
    if (n < 2) return edges;
    edges.reserve(n - 1);
    std::vector<bool> in_tree(n, false);
    std::vector<double> best_w(n, std::numeric_limits<double>::infinity());
    IndexList best_u(n, 0);
    auto key_less = [](double wa, Index a1, Index a2, double wb, Index b1, Index b2) {
        const Index alo = std::min(a1, a2);
        const Index ahi = std::max(a1, a2);
        const Index blo = std::min(b1, b2);
        const Index bhi = std::max(b1, b2);
        if (wa != wb) return wa < wb;
        if (alo != blo) return alo < blo;
        return ahi < bhi;
    };
    in_tree[0] = true;
    for (Index v = 1; v < n; ++v) {
        best_w[v] = d(0, v);
        best_u[v] = 0;
    }
    for (Index step = 1; step < n; ++step) {
        Index pick = n;
        for (Index v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (pick == n || key_less(best_w[v], best_u[v], v, best_w[pick], best_u[pick], pick)) pick = v;
        }
        in_tree[pick] = true;
        edges.push_back({std::min(pick, best_u[pick]), std::max(pick, best_u[pick]), best_w[pick]});
        for (Index v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (key_less(d(pick, v), pick, v, best_w[v], best_u[v], v)) {
                best_w[v] = d(pick, v);
                best_u[v] = pick;
            }
        }
    }
    return edges;
}

MeasureContext::MeasureContext(Dataset data, Index k) : data_(std::move(data)), k_(k), d_(data_.features()) {
    require_both_classes(data_, "measure context");
    const Index n = data_.size();
    mst_ = minimum_spanning_tree(d_);
    adjacency_.assign(n, {});
    for (const MstEdge& e : mst_) {
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
    const IndexList members[2] = {data_.indices_of(0), data_.indices_of(1)};
    IndexList everyone(n);
    for (Index i = 0; i < n; ++i) everyone[i] = i;
    enemy_.resize(n);
    friend_.assign(n, n);
    local_sets_.assign(n, {});
    knn_.assign(n, {});
    for (Index i = 0; i < n; ++i) {
        const Label c = data_.label(i);
        enemy_[i] = nearest_among(d_, i, members[1 - c], 1).front();
        const IndexList f = nearest_among(d_, i, members[c], 1);
        if (!f.empty()) friend_[i] = f.front();
        const double radius = d_(i, enemy_[i]);
        for (Index j = 0; j < n; ++j) {
            if (j != i && d_(i, j) < radius) local_sets_[i].push_back(j);
        }
        knn_[i] = nearest_among(d_, i, everyone, std::min(k_, n - 1));
    }
}

std::optional<Index> MeasureContext::nearest_friend(Index i) const {
    if (friend_[i] == data_.size()) return std::nullopt;
    return friend_[i];
}

void neighborhood_measures(const MeasureContext& ctx, InstanceMeasures& out) {
    const Dataset& data = ctx.data();
    const Index n = data.size();
    if (n <= ctx.k()) {
        throw Error("neighborhood measures: need more than k = " + std::to_string(ctx.k()) + " instances, got " +
                    std::to_string(n));
    }
    const auto counts = data.class_counts();
    for (InstanceMeasure m : {InstanceMeasure::kDN, InstanceMeasure::N1_i, InstanceMeasure::N2_i,
                              InstanceMeasure::LSC_i, InstanceMeasure::LSR, InstanceMeasure::U, InstanceMeasure::H}) {
        out[m].assign(n, 0.0);
    }
    std::vector<Index> in_local_sets(n, 0);
    std::vector<Index> enemy_of(n, 0);
    for (Index z = 0; z < n; ++z) {
        for (Index x : ctx.local_set(z)) ++in_local_sets[x];
        ++enemy_of[ctx.nearest_enemy(z)];
    }
    for (Index i = 0; i < n; ++i) {
        const Label c = data.label(i);
        const auto& nb = ctx.neighbours(i);
        const auto disagree =
            std::count_if(nb.begin(), nb.end(), [&](Index z) { return data.label(z) != c; });
        out[InstanceMeasure::kDN][i] = static_cast<double>(disagree) / static_cast<double>(nb.size());

        const auto& adj = ctx.mst_adjacency()[i];
        const auto cross = std::count_if(adj.begin(), adj.end(), [&](Index z) { return data.label(z) != c; });
        out[InstanceMeasure::N1_i][i] = static_cast<double>(cross) / static_cast<double>(adj.size());

        const double d_enemy = ctx.enemy_distance(i);
        double n2 = 1.0;
        if (auto f = ctx.nearest_friend(i)) {
            const double d_same = ctx.distances()(i, *f);
            if (d_enemy > 0.0) {
                const double r = d_same / d_enemy;
                n2 = r / (1.0 + r);
            } else {
                n2 = d_same > 0.0 ? 1.0 : 0.5;
            }
        }
        out[InstanceMeasure::N2_i][i] = n2;

        const Index own = counts[c];
        out[InstanceMeasure::LSC_i][i] =
            own > 1 ? 1.0 - static_cast<double>(ctx.local_set(i).size()) / static_cast<double>(own - 1) : 1.0;
        out[InstanceMeasure::U][i] =
            own > 1 ? 1.0 - static_cast<double>(in_local_sets[i]) / static_cast<double>(own - 1) : 1.0;

        const auto row = ctx.distances().row(i);
        const double far = *std::max_element(row.begin(), row.end());
        out[InstanceMeasure::LSR][i] = far > 0.0 ? 1.0 - d_enemy / far : 1.0;

        out[InstanceMeasure::H][i] = static_cast<double>(enemy_of[i]) / static_cast<double>(counts[1 - c]);
    }
}

namespace {

double depth_ratio(int depth, int max_depth) {
    return max_depth > 0 ? static_cast<double>(depth) / static_cast<double>(max_depth) : 0.0;
}

} // namespace

void tree_measures(const Dataset& data, std::uint64_t seed, InstanceMeasures& out) {
    const Index n = data.size();
    const Matrix& x = data.features();
    const auto& y = data.labels();
    TreeOptions options;
    options.criterion = Criterion::entropy;

    const DecisionTree full = DecisionTree::fit(x, y, {}, options);
    Index largest = 0;
    for (int leaf : full.leaves()) largest = std::max(largest, full.node(leaf).size());
    const int full_depth = full.max_leaf_depth();
    out[InstanceMeasure::DS].assign(n, 1.0);
    out[InstanceMeasure::TD_U].assign(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        const TreeNode& leaf = full.node(full.leaf_of(data.row(i)));
        if (largest > 1) {
            out[InstanceMeasure::DS][i] =
                1.0 - static_cast<double>(leaf.size() - 1) / static_cast<double>(largest - 1);
        }
        out[InstanceMeasure::TD_U][i] = depth_ratio(leaf.depth, full_depth);
    }

    // Stratified 70/30 grow/prune split.
    IndexList grow;
    IndexList holdout;
    for (Label c : {0, 1}) {
        IndexList members = data.indices_of(c);
        Rng rng(derive_seed(seed, 0x9e, static_cast<std::uint64_t>(c)));
        rng.shuffle(members);
        const auto h = static_cast<Index>(std::llround(0.3 * static_cast<double>(members.size())));
        holdout.insert(holdout.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(h));
        grow.insert(grow.end(), members.begin() + static_cast<std::ptrdiff_t>(h), members.end());
    }
    std::sort(grow.begin(), grow.end());
    std::sort(holdout.begin(), holdout.end());
    DecisionTree pruned = DecisionTree::fit(x, y, {}, options, nullptr, grow);
    if (!holdout.empty()) pruned.prune_reduced_error(x, y, holdout);
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    pruned.recount(x, y, all);
    const int pruned_depth = pruned.max_leaf_depth();
    out[InstanceMeasure::DCP].assign(n, 0.0);
    out[InstanceMeasure::TD_P].assign(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        const TreeNode& leaf = pruned.node(pruned.leaf_of(data.row(i)));
        const auto same = static_cast<double>(leaf.count[data.label(i)]);
        out[InstanceMeasure::DCP][i] = 1.0 - same / static_cast<double>(leaf.size());
        out[InstanceMeasure::TD_P][i] = depth_ratio(leaf.depth, pruned_depth);
    }
}

double silverman_bandwidth(std::vector<double> sample) {
    constexpr double floor_h = 1e-6;
    const Index n = sample.size();
    if (n < 2) return floor_h;
    std::sort(sample.begin(), sample.end());
    double mean = 0.0;
    for (double v : sample) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : sample) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const auto lo = static_cast<Index>(std::floor(pos));
        const Index hi = std::min(lo + 1, n - 1);
        return sample[lo] + (pos - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return std::max(floor_h, 0.9 * spread * std::pow(static_cast<double>(n), -0.2));
}

void likelihood_measures(const Dataset& data, InstanceMeasures& out) {
    require_both_classes(data, "likelihood measures");
    const Index n = data.size();
    const Index m = data.num_features();
    const IndexList members[2] = {data.indices_of(0), data.indices_of(1)};
    // log_like[c][i] = sum over features of log KDE density of class c at x_i.
    std::vector<double> log_like[2] = {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi);
    for (int c = 0; c < 2; ++c) {
        const auto nc = static_cast<double>(members[c].size());
        for (Index f = 0; f < m; ++f) {
            std::vector<double> sample;
            sample.reserve(members[c].size());
            for (Index i : members[c]) sample.push_back(data.features()(i, f));
            const double h = silverman_bandwidth(sample);
            for (Index i = 0; i < n; ++i) {
                const double xv = data.features()(i, f);
                double top = -std::numeric_limits<double>::infinity();
                std::vector<double> e(sample.size());
                for (Index s = 0; s < sample.size(); ++s) {
                    const double u = (xv - sample[s]) / h;
                    e[s] = -0.5 * u * u;
                    top = std::max(top, e[s]);
                }
                double acc = 0.0;
                for (double v : e) acc += std::exp(v - top);
                log_like[c][i] += top + std::log(acc) - std::log(nc * h) - log_norm;
            }
        }
    }
    out[InstanceMeasure::CL].assign(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        const Label c = data.label(i);
        const double diff = log_like[1 - c][i] - log_like[c][i];
        // 1 - own / (own + other) = logistic(other - own)
        out[InstanceMeasure::CL][i] = diff >= 0.0 ? 1.0 / (1.0 + std::exp(-diff))
                                                  : std::exp(diff) / (1.0 + std::exp(diff));
    }
}

void balance_measures(const Dataset& data, InstanceMeasures& out) {
    require_both_classes(data, "balance measures");
    const Index n = data.size();
    const auto counts = data.class_counts();
    const auto majority = static_cast<double>(std::max(counts[0], counts[1]));
    out[InstanceMeasure::MV].assign(n, 0.0);
    out[InstanceMeasure::CB].assign(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        const auto own = static_cast<double>(counts[data.label(i)]);
        out[InstanceMeasure::MV][i] = 1.0 - own / majority;
        out[InstanceMeasure::CB][i] = 1.0 - own / static_cast<double>(n);
    }
}

void feature_overlap_measure(const Dataset& data, InstanceMeasures& out) {
    require_both_classes(data, "feature overlap measure");
    const Index n = data.size();
    const Index m = data.num_features();
    std::vector<double> lo[2];
    std::vector<double> hi[2];
    for (int c = 0; c < 2; ++c) {
        lo[c].assign(m, std::numeric_limits<double>::infinity());
        hi[c].assign(m, -std::numeric_limits<double>::infinity());
    }
    for (Index i = 0; i < n; ++i) {
        const Label c = data.label(i);
        for (Index f = 0; f < m; ++f) {
            lo[c][f] = std::min(lo[c][f], data.features()(i, f));
            hi[c][f] = std::max(hi[c][f], data.features()(i, f));
        }
    }
    out[InstanceMeasure::F1_i].assign(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        const Label other = 1 - data.label(i);
        Index inside = 0;
        for (Index f = 0; f < m; ++f) {
            const double v = data.features()(i, f);
            if (v >= lo[other][f] && v <= hi[other][f]) ++inside;
        }
        out[InstanceMeasure::F1_i][i] = static_cast<double>(inside) / static_cast<double>(m);
    }
}

InstanceMeasures instance_measures(const Dataset& data, const MeasureOptions& options) {
    require_both_classes(data, "instance measures");
    const Dataset space = measure_space(data, options);
    InstanceMeasures out;
    const MeasureContext ctx(space, options.k);
    neighborhood_measures(ctx, out);
    tree_measures(space, options.seed, out);
    likelihood_measures(space, out);
    balance_measures(space, out);
    feature_overlap_measure(space, out);
    return out;
}

} // namespace hardscope
