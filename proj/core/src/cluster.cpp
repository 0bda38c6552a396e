#include "hardscope/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hardscope/metrics.hpp"

namespace hardscope {

CodMatrix::CodMatrix(std::vector<std::string> names, Matrix values)
    : names_(std::move(names)), values_(std::move(values)) {
    const Index p = values_.rows();
    if (values_.cols() != p) throw Error("cod matrix: not square");
    if (names_.size() != p) throw Error("cod matrix: name count mismatch");
    for (Index i = 0; i < p; ++i) {
        if (values_(i, i) != 0.0) throw Error("cod matrix: nonzero diagonal");
        for (Index j = 0; j < p; ++j) {
            const double v = values_(i, j);
            if (!(v >= 0.0 && v <= 1.0)) throw Error("cod matrix: value outside [0, 1]");
            if (v != values_(j, i)) throw Error("cod matrix: not symmetric");
        }
    }
}

CodMatrix CodMatrix::from_predictions(std::vector<std::string> names,
                                      const std::vector<std::vector<Label>>& predictions) {
    const Index p = predictions.size();
    Matrix values(p, p, 0.0);
    for (Index i = 0; i < p; ++i) {
        for (Index j = i + 1; j < p; ++j) {
            values(i, j) = values(j, i) = cod_distance(predictions[i], predictions[j]);
        }
    }
    return CodMatrix(std::move(names), std::move(values));
}

PoolClustering cluster_pool(const CodMatrix& cod, Linkage linkage, double cut) {
    if (linkage != Linkage::average) throw Error("cluster_pool: unsupported linkage");
    const Index p = cod.size();
    if (p < 2) throw Error("cluster_pool: need at least 2 learners");
    if (!(cut >= 0.0)) throw Error("cluster_pool: cut must be >= 0");

    struct Active {
        Index id;
        Index size;
    };
    std::vector<Active> active;
    for (Index i = 0; i < p; ++i) active.push_back({i, 1});
    // dist[a][b] over positions in `active`.
    std::vector<std::vector<double>> dist(p, std::vector<double>(p));
    for (Index i = 0; i < p; ++i) {
        for (Index j = 0; j < p; ++j) dist[i][j] = cod(i, j);
    }

    Dendrogram dendro;
    dendro.leaves = cod.names();
    while (active.size() > 1) {
        Index best_a = 0;
        Index best_b = 1;
        double best = std::numeric_limits<double>::infinity();
        std::pair<Index, Index> best_key{0, 0};
        for (Index a = 0; a < active.size(); ++a) {
            for (Index b = a + 1; b < active.size(); ++b) {
                const std::pair<Index, Index> key{std::min(active[a].id, active[b].id),
                                                  std::max(active[a].id, active[b].id)};
                if (dist[a][b] < best || (dist[a][b] == best && key < best_key)) {
                    best = dist[a][b];
                    best_key = key;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        const Index new_id = p + dendro.merges.size();
        const Index sa = active[best_a].size;
        const Index sb = active[best_b].size;
        dendro.merges.push_back({best_key.first, best_key.second, best, sa + sb});
        // UPGMA update into slot best_a; drop slot best_b.
        for (Index c = 0; c < active.size(); ++c) {
            if (c == best_a || c == best_b) continue;
            const double d = (static_cast<double>(sa) * dist[best_a][c] + static_cast<double>(sb) * dist[best_b][c]) /
                             static_cast<double>(sa + sb);
            dist[best_a][c] = dist[c][best_a] = d;
        }
        active[best_a] = {new_id, sa + sb};
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
        dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(best_b));
        for (auto& row : dist) row.erase(row.begin() + static_cast<std::ptrdiff_t>(best_b));
    }
    PoolClustering out;
    out.clusters = dendro.cut(cut);
    out.dendrogram = std::move(dendro);
    return out;
}

std::vector<IndexList> Dendrogram::cut(double height) const {
    const Index p = leaves.size();
    std::vector<Index> parent(p + merges.size());
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Index k = 0; k < merges.size(); ++k) {
        const Index node = p + k;
        // Every merge node joins its children structurally; only low merges join leaves.
        if (merges[k].height <= height) {
            parent[find(merges[k].left)] = node;
            parent[find(merges[k].right)] = node;
        }
    }
    std::vector<IndexList> groups;
    std::vector<long long> slot(p + merges.size(), -1);
    for (Index leaf = 0; leaf < p; ++leaf) {
        const Index root = find(leaf);
        if (slot[root] < 0) {
            slot[root] = static_cast<long long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<Index>(slot[root])].push_back(leaf);
    }
    return groups;
}

nlohmann::json Dendrogram::to_json() const {
    const Index p = leaves.size();
    auto node = [&](auto&& self, Index id) -> nlohmann::json {
        if (id < p) return {{"name", leaves[id]}, {"index", id}};
        const Merge& m = merges[id - p];
        return {{"height", m.height},
                {"size", m.size},
                {"children", nlohmann::json::array({self(self, m.left), self(self, m.right)})}};
    };
    nlohmann::json out;
    out["leaves"] = leaves;
    out["merges"] = nlohmann::json::array();
    for (const auto& m : merges) {
        out["merges"].push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
    }
    out["root"] = merges.empty() ? (p == 1 ? node(node, 0) : nlohmann::json()) : node(node, p + merges.size() - 1);
    return out;
}

std::string Dendrogram::to_newick() const {
    const Index p = leaves.size();
    std::ostringstream out;
    out << std::setprecision(6);
    auto height_of = [&](Index id) { return id < p ? 0.0 : merges[id - p].height; };
    auto emit = [&](auto&& self, Index id, double parent_height) -> void {
        if (id < p) {
            out << leaves[id];
        } else {
            const Merge& m = merges[id - p];
            out << '(';
            self(self, m.left, m.height);
            out << ',';
            self(self, m.right, m.height);
            out << ')';
        }
        if (parent_height >= 0.0) out << ':' << parent_height - height_of(id);
    };
    if (!merges.empty()) emit(emit, p + merges.size() - 1, -1.0);
    out << ';';
    return out.str();
}

} // namespace hardscope
