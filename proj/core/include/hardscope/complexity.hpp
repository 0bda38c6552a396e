#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardscope/dataset.hpp"
#include "hardscope/measures.hpp"

namespace hardscope {

enum class ComplexityMeasure {
    F1, F1v, F2, F3, F4,
    L1, L2, L3,
    N1, N2, N3, N4, T1, LSC,
    Density, ClsCoef, Hubs,
    T2, T3, T4,
    C1, C2,
};

inline constexpr std::array<ComplexityMeasure, 22> all_complexity_measures = {
    ComplexityMeasure::F1,      ComplexityMeasure::F1v,  ComplexityMeasure::F2, ComplexityMeasure::F3,
    ComplexityMeasure::F4,      ComplexityMeasure::L1,   ComplexityMeasure::L2, ComplexityMeasure::L3,
    ComplexityMeasure::N1,      ComplexityMeasure::N2,   ComplexityMeasure::N3, ComplexityMeasure::N4,
    ComplexityMeasure::T1,      ComplexityMeasure::LSC,  ComplexityMeasure::Density,
    ComplexityMeasure::ClsCoef, ComplexityMeasure::Hubs, ComplexityMeasure::T2, ComplexityMeasure::T3,
    ComplexityMeasure::T4,      ComplexityMeasure::C1,   ComplexityMeasure::C2};

std::string_view to_string(ComplexityMeasure measure);
ComplexityMeasure parse_complexity_measure(std::string_view text);
/// Family name: feature, linearity, neighborhood, network, dimensionality,
/// balance.
std::string_view family_of(ComplexityMeasure measure);

/// Dataset-level measure vector. Unset entries were not computed.
struct ComplexityProfile {
    std::array<std::optional<double>, all_complexity_measures.size()> values{};
    /// Set when the dataset had a single class (C1 = C2 = 1 by convention).
    bool single_class = false;

    std::optional<double>& operator[](ComplexityMeasure m) { return values[static_cast<Index>(m)]; }
    const std::optional<double>& operator[](ComplexityMeasure m) const { return values[static_cast<Index>(m)]; }
    /// Throws if the measure was not computed.
    double at(ComplexityMeasure m) const;
};

/// Inclusive [min, max] range of a measure for a dataset of n instances and
/// m features.
std::pair<double, double> complexity_bounds(ComplexityMeasure measure, Index n, Index m);

/// Two-class discriminant ratio of one feature column:
/// sum_c n_c (mu_c - mu)^2 / sum_c sum_i (x_i - mu_c)^2.
/// 0/0 gives 0; a zero denominator alone gives +inf.
double discriminant_ratio(std::span<const double> values, std::span<const Label> labels);

// Each family takes data already in measure space (see measure_space).
void feature_measures(const Dataset& data, ComplexityProfile& out);
void linearity_measures(const Dataset& data, std::uint64_t seed, ComplexityProfile& out);
void neighborhood_dataset_measures(const MeasureContext& ctx, std::uint64_t seed, ComplexityProfile& out);
void network_measures(const Dataset& data, ComplexityProfile& out);
void dimensionality_measures(const Dataset& data, ComplexityProfile& out);
void balance_dataset_measures(const Dataset& data, ComplexityProfile& out);

/// Every measure. Standardizes first when options.standardize is set. A
/// single-class dataset yields only C1, C2 (both 1) and T2-T4, with
/// single_class set.
ComplexityProfile complexity_profile(const Dataset& data, const MeasureOptions& options = {});

/// Convenience single-measure entry points used by adaptive preprocessing.
double f1_measure(const Dataset& data);
double n2_measure(const Dataset& data);

/// Same-class interpolation points used by L3 and N4: for each class with
/// n_c >= 1 members, n_c midpoints of uniformly drawn member pairs. The
/// stream for a class is keyed by its lowest instance index, so exchanging
/// the labels yields the same points.
Dataset interpolated_points(const Dataset& data, std::uint64_t seed);

/// Edge list of the class-pure epsilon graph: pairs (i < j) of the same
/// class with d(i, j) < 0.15 * max distance.
std::vector<std::pair<Index, Index>> epsilon_graph(const DistanceMatrix& d, const std::vector<Label>& labels,
                                                   double epsilon = 0.15);

/// Components retained by PCA on standardized features at the given
/// cumulative explained-variance threshold (at least 1).
Index pca_components(const Dataset& data, double threshold = 0.95);

} // namespace hardscope
