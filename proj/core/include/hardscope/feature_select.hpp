#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardscope/dataset.hpp"

namespace hardscope {

enum class FeatureSelectMethod { cfs, skb_anova, skb_mutual, linsvm_importance, tree_importance, none };

std::string_view to_string(FeatureSelectMethod method);
FeatureSelectMethod parse_feature_select_method(std::string_view text);

struct FeatureSelectSpec {
    FeatureSelectMethod method = FeatureSelectMethod::cfs;
    /// Features kept by the ranking selectors; 0 means max(1, ceil(m / 2)).
    /// Ignored by cfs (own stopping rule) and none.
    Index k = 0;
    std::uint64_t seed = 42;
};

/// Parses "method[:k=..,seed=..]".
FeatureSelectSpec parse_feature_select_spec(std::string_view text);
std::string to_string(const FeatureSelectSpec& spec);

struct FeatureSelection {
    FeatureSelection(Dataset d, IndexList kept_columns, std::vector<double> feature_scores)
        : data(std::move(d)), kept(std::move(kept_columns)), scores(std::move(feature_scores)) {}

    Dataset data;
    /// Kept column indices, ascending; apply to test data with select_features.
    IndexList kept;
    /// Per-feature score used for ranking (higher = more useful).
    std::vector<double> scores;
    bool warning = false;
    std::string message;
};

FeatureSelection select_features(const Dataset& train, const FeatureSelectSpec& spec);

/// One-way ANOVA F statistic per feature. A feature with zero within-class
/// spread scores +inf when its class means differ and 0 otherwise.
std::vector<double> anova_f_scores(const Dataset& data);

/// Mutual information (nats) between each feature, discretized into `bins`
/// equal-frequency bins on midranks, and the label.
std::vector<double> mutual_information_scores(const Dataset& data, Index bins = 10);

/// |w| of a linear SVM fitted on standardized features.
std::vector<double> linsvm_scores(const Dataset& data);

/// Random-forest impurity-decrease importances.
std::vector<double> tree_scores(const Dataset& data, std::uint64_t seed);

/// Feature indices by descending score; ties and constant features go to
/// the lower index / the end respectively.
IndexList rank_features(const Dataset& data, const std::vector<double>& scores);

/// CFS merit of a subset given |feature-class| and |feature-feature|
/// rank correlations.
double cfs_merit(const IndexList& subset, const std::vector<double>& class_corr,
                 const std::vector<std::vector<double>>& feature_corr);

/// Greedy forward CFS: adds the feature with the best merit while the merit
/// strictly improves. Always keeps at least one feature. Returns ascending
/// indices.
IndexList cfs_select(const Dataset& data);

} // namespace hardscope
