#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardscope/dataset.hpp"
#include "hardscope/feature_select.hpp"
#include "hardscope/normalize.hpp"
#include "hardscope/resample.hpp"

namespace hardscope {

/// One evaluated option of a stage; `value` is empty when it failed.
struct StageCandidate {
    std::string name;
    std::optional<double> value;
    std::string error;
};

struct PreprocessPlan {
    std::uint64_t seed = 42;

    NormKind normalization = NormKind::none;
    NormalizationSpec normalizer;
    double normalization_value = 0.0;  // N2 of the chosen option
    std::vector<StageCandidate> normalization_candidates;

    FeatureSelectMethod selector = FeatureSelectMethod::none;
    IndexList kept_features;
    double selector_value = 0.0;  // F1
    std::vector<StageCandidate> selector_candidates;

    ResampleMethod resampler = ResampleMethod::smote;
    double resampler_value = 0.0;  // F1
    std::vector<StageCandidate> resampler_candidates;

    std::vector<std::string> warnings;

    /// Applies the fitted normalization and feature selection to other data
    /// (resampling is training-only).
    Matrix transform(const Matrix& rows) const;
    Dataset transform(const Dataset& data) const;
};

struct AdaptiveOptions {
    std::uint64_t seed = 42;
    Index smote_k = 5;
    std::vector<NormKind> normalizations{NormKind::standard, NormKind::none};
    std::vector<FeatureSelectMethod> selectors{FeatureSelectMethod::skb_anova, FeatureSelectMethod::skb_mutual,
                                               FeatureSelectMethod::linsvm_importance,
                                               FeatureSelectMethod::tree_importance, FeatureSelectMethod::none};
    std::vector<ResampleMethod> resamplers{ResampleMethod::smote, ResampleMethod::border_smote,
                                           ResampleMethod::smote_tomek, ResampleMethod::smote_enn};
};

struct AdaptiveResult {
    Dataset data;
    PreprocessPlan plan;
};

/// Three greedy stages, each keeping the candidate with the lowest measure
/// (first listed wins ties): normalization by N2, then feature selection by
/// F1, then resampling by F1. Every candidate of a stage sees that stage's
/// input and the run seed. Failing candidates are skipped with a warning; a
/// stage with no surviving candidate is an error.
AdaptiveResult adaptive_preprocess(const Dataset& train, const AdaptiveOptions& options = {});

} // namespace hardscope
