#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hardscope/dataset.hpp"
#include "hardscope/distance.hpp"

namespace hardscope {

enum class InstanceMeasure { kDN, DS, DCP, TD_P, TD_U, CL, MV, CB, F1_i, N1_i, N2_i, LSC_i, LSR, U, H };

inline constexpr std::array<InstanceMeasure, 15> all_instance_measures = {
    InstanceMeasure::kDN,  InstanceMeasure::DS,   InstanceMeasure::DCP,  InstanceMeasure::TD_P,
    InstanceMeasure::TD_U, InstanceMeasure::CL,   InstanceMeasure::MV,   InstanceMeasure::CB,
    InstanceMeasure::F1_i, InstanceMeasure::N1_i, InstanceMeasure::N2_i, InstanceMeasure::LSC_i,
    InstanceMeasure::LSR,  InstanceMeasure::U,    InstanceMeasure::H};

/// Display name: kDN, DS, ..., F1_i, N1_i, N2_i, LSC_i, LSR, U, H.
std::string_view to_string(InstanceMeasure measure);
/// Case-insensitive; also accepts the names without the "_i" suffix
/// (f1, n1, n2, lsc).
InstanceMeasure parse_instance_measure(std::string_view text);

struct MeasureOptions {
    /// Neighbour count for kDN.
    Index k = 5;
    /// Standardize features before computing anything distance-based.
    bool standardize = true;
    /// Seeds the pruning holdout (tree measures) and interpolation draws
    /// (L3/N4).
    std::uint64_t seed = 42;
};

/// Features in the space measures are computed in.
Dataset measure_space(const Dataset& data, const MeasureOptions& options);

struct MstEdge {
    Index a = 0;
    Index b = 0;
    double weight = 0.0;
};

/// Minimum spanning tree by Prim's algorithm; equal weights resolve to the
/// smallest (min endpoint, max endpoint) pair. Edges have a < b and are
/// listed in the order they were added.
std::vector<MstEdge> minimum_spanning_tree(const DistanceMatrix& d);

/// Shared neighbourhood structures over one dataset (already in measure
/// space). Immutable after construction.
class MeasureContext {
public:
    explicit MeasureContext(Dataset data, Index k = 5);

    const Dataset& data() const noexcept { return data_; }
    Index k() const noexcept { return k_; }
    const DistanceMatrix& distances() const noexcept { return d_; }
    const std::vector<MstEdge>& mst() const noexcept { return mst_; }
    /// MST neighbours of each vertex.
    const std::vector<IndexList>& mst_adjacency() const noexcept { return adjacency_; }
    /// Nearest instance of the other class (ties to the lower index).
    Index nearest_enemy(Index i) const { return enemy_[i]; }
    double enemy_distance(Index i) const { return d_(i, enemy_[i]); }
    /// Nearest other instance of the same class, if any.
    std::optional<Index> nearest_friend(Index i) const;
    /// Points strictly closer to i than its nearest enemy, excluding i.
    const IndexList& local_set(Index i) const { return local_sets_[i]; }
    /// The k nearest neighbours of i (self excluded, ties to the lower index).
    const IndexList& neighbours(Index i) const { return knn_[i]; }

private:
    Dataset data_;
    Index k_;
    DistanceMatrix d_;
    std::vector<MstEdge> mst_;
    std::vector<IndexList> adjacency_;
    IndexList enemy_;
    std::vector<Index> friend_;
    std::vector<IndexList> local_sets_;
    std::vector<IndexList> knn_;
};

/// Per-instance values for every measure, indexed by InstanceMeasure.
struct InstanceMeasures {
    std::array<std::vector<double>, all_instance_measures.size()> values;

    std::vector<double>& operator[](InstanceMeasure m) { return values[static_cast<Index>(m)]; }
    const std::vector<double>& operator[](InstanceMeasure m) const { return values[static_cast<Index>(m)]; }
    Index size() const noexcept { return values.front().size(); }
};

/// kDN, N1_i, N2_i, LSC_i, LSR, U, H. Requires n > k and both classes.
void neighborhood_measures(const MeasureContext& ctx, InstanceMeasures& out);

/// DS and TD_U from an unpruned entropy tree; DCP and TD_P from the same
/// tree grown on a seeded 70% split and reduced-error pruned on the other
/// 30%, with disjunct membership then recounted over all instances.
void tree_measures(const Dataset& data, std::uint64_t seed, InstanceMeasures& out);

/// CL: 1 - own-class likelihood share, with per-feature Gaussian KDE
/// likelihoods multiplied under independence.
void likelihood_measures(const Dataset& data, InstanceMeasures& out);

/// MV = 1 - n_own / n_majority; CB = 1 - n_own / n.
void balance_measures(const Dataset& data, InstanceMeasures& out);

/// F1_i: fraction of features on which the instance falls inside the other
/// class's [min, max] range.
void feature_overlap_measure(const Dataset& data, InstanceMeasures& out);

/// Every measure. Standardizes first when options.standardize is set.
InstanceMeasures instance_measures(const Dataset& data, const MeasureOptions& options = {});

/// Bandwidth used by the CL kernel density estimate for one feature sample:
/// 0.9 * min(sd, IQR / 1.34) * n^(-1/5), with sd alone when the IQR is 0,
/// floored at 1e-6.
double silverman_bandwidth(std::vector<double> sample);

} // namespace hardscope
