#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardscope/feature_select.hpp"
#include "hardscope/folds.hpp"
#include "hardscope/learners.hpp"
#include "hardscope/measures.hpp"
#include "hardscope/normalize.hpp"
#include "hardscope/resample.hpp"

namespace hardscope {

/// Per-fold preprocessing fitted on the training rows only:
/// normalization, then feature selection, then resampling.
struct BaselinePipeline {
    NormKind normalization = NormKind::standard;
    FeatureSelectSpec selector{FeatureSelectMethod::cfs};
    /// Applied to the training fold only; nullopt disables resampling.
    std::optional<ResampleSpec> resampler = ResampleSpec{};

    /// No normalization, selection or resampling.
    static BaselinePipeline identity() { return {NormKind::none, {FeatureSelectMethod::none}, std::nullopt}; }
};

/// A training fold after the pipeline, plus what is needed to map test rows
/// into the same space.
struct PreparedFold {
    Dataset train;
    NormalizationSpec normalizer;
    IndexList kept_features;

    Matrix transform(const Matrix& rows) const;
};

/// Runs the pipeline on `rows` of `data`. The rows are first put in
/// canonical order so results do not depend on the incoming row order.
PreparedFold prepare_fold(const Dataset& data, const IndexList& rows, const BaselinePipeline& pipeline,
                          std::uint64_t seed);

/// Test-fold predictions of every pool member in every repeat.
struct PoolPredictions {
    std::vector<std::string> learners;
    Index repeats = 0;
    Index n = 0;
    /// predictions[repeat][learner][instance]: 0/1, or -1 when the learner
    /// failed to fit on that instance's fold.
    std::vector<std::vector<std::vector<int>>> predictions;
    /// One message per (repeat, fold, learner) fit failure.
    std::vector<std::string> failures;
};

/// Cross-validates every pool member over the plan. A learner that fails on
/// a fold is recorded and skipped; if every learner fails on one fold the
/// whole run fails.
PoolPredictions run_pool_cv(const Dataset& data, const std::vector<LearnerSpec>& pool, const EvaluationPlan& plan,
                            const BaselinePipeline& pipeline = {}, unsigned threads = 0);

struct HardnessReport {
    std::vector<Label> labels;
    /// Misclassification frequency over (repeat, learner) cells.
    std::vector<double> ih;
    std::vector<std::string> learners;
    /// ih_by_learner[learner][instance], averaged over repeats.
    std::vector<std::vector<double>> ih_by_learner;
    std::optional<InstanceMeasures> measures;
    std::vector<std::string> warnings;

    Index size() const noexcept { return ih.size(); }
};

HardnessReport hardness_from_predictions(const Dataset& data, const PoolPredictions& predictions);

HardnessReport estimate_ih(const Dataset& data, const std::vector<LearnerSpec>& pool, const EvaluationPlan& plan,
                           const BaselinePipeline& pipeline = {}, unsigned threads = 0);

/// estimate_ih plus the 15 instance measures on the full dataset.
HardnessReport analyze_instances(const Dataset& data, const std::vector<LearnerSpec>& pool,
                                 const EvaluationPlan& plan, const BaselinePipeline& pipeline = {},
                                 const MeasureOptions& measure_options = {}, unsigned threads = 0);

/// Mean instance hardness.
double dsh(const HardnessReport& report);
double dsh(const std::vector<double>& ih);

/// 1 - mean over learners of the repeat-averaged MCC, where each repeat's
/// MCC pools that learner's test predictions over all folds.
double idsh(const Dataset& data, const PoolPredictions& predictions);
double idsh(const Dataset& data, const std::vector<LearnerSpec>& pool, const EvaluationPlan& plan,
            const BaselinePipeline& pipeline = {}, unsigned threads = 0);

/// Per-learner repeat-averaged pooled MCC (the terms averaged by idsh).
std::vector<double> learner_mcc(const Dataset& data, const PoolPredictions& predictions);

} // namespace hardscope
