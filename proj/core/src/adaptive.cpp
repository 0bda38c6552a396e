#include "hardscope/adaptive.hpp"

#include "hardscope/complexity.hpp"

namespace hardscope {

Matrix PreprocessPlan::transform(const Matrix& rows) const {
    return normalizer.apply(rows).select_cols(kept_features);
}

Dataset PreprocessPlan::transform(const Dataset& data) const {
    return normalizer.apply(data).select_features(kept_features);
}

namespace {

template <typename Option, typename Eval>
std::optional<Index> run_stage(const std::vector<Option>& options, Eval&& evaluate,
                               std::vector<StageCandidate>& record, std::vector<std::string>& warnings,
                               std::string_view stage) {
    std::optional<Index> best;
    double best_value = 0.0;
    for (Index i = 0; i < options.size(); ++i) {
        StageCandidate c{std::string(to_string(options[i])), std::nullopt, {}};
        try {
            c.value = evaluate(options[i]);
            if (!best || *c.value < best_value) {
                best = i;
                best_value = *c.value;
            }
        } catch (const Error& e) {
            c.error = e.what();
            warnings.push_back(std::string(stage) + " candidate " + c.name + " skipped: " + e.what());
        }
        record.push_back(std::move(c));
    }
    return best;
}

} // namespace

AdaptiveResult adaptive_preprocess(const Dataset& train, const AdaptiveOptions& options) {
    require_both_classes(train, "adaptive preprocessing");
    PreprocessPlan plan;
    plan.seed = options.seed;

    const auto norm_pick = run_stage(
        options.normalizations,
        [&](NormKind kind) { return n2_measure(fit_normalizer(train, kind).apply(train)); },
        plan.normalization_candidates, plan.warnings, "normalization");
    if (!norm_pick) throw Error("adaptive preprocessing: every normalization candidate failed");
    plan.normalization = options.normalizations[*norm_pick];
    plan.normalizer = fit_normalizer(train, plan.normalization);
    plan.normalization_value = *plan.normalization_candidates[*norm_pick].value;
    const Dataset stage1 = plan.normalizer.apply(train);

    const auto fs_pick = run_stage(
        options.selectors,
        [&](FeatureSelectMethod m) {
            return f1_measure(select_features(stage1, FeatureSelectSpec{m, 0, options.seed}).data);
        },
        plan.selector_candidates, plan.warnings, "feature selection");
    if (!fs_pick) throw Error("adaptive preprocessing: every feature-selection candidate failed");
    plan.selector = options.selectors[*fs_pick];
    FeatureSelection chosen = select_features(stage1, FeatureSelectSpec{plan.selector, 0, options.seed});
    plan.kept_features = chosen.kept;
    plan.selector_value = *plan.selector_candidates[*fs_pick].value;
    const Dataset stage2 = chosen.data;

    auto resample_spec = [&](ResampleMethod m) { return ResampleSpec{m, options.smote_k, options.seed, 1.0}; };
    const auto rs_pick = run_stage(
        options.resamplers, [&](ResampleMethod m) { return f1_measure(resample(stage2, resample_spec(m)).data); },
        plan.resampler_candidates, plan.warnings, "resampling");
    if (!rs_pick) throw Error("adaptive preprocessing: every resampling candidate failed");
    plan.resampler = options.resamplers[*rs_pick];
    plan.resampler_value = *plan.resampler_candidates[*rs_pick].value;
    ResampleResult final_set = resample(stage2, resample_spec(plan.resampler));
    if (final_set.warning) plan.warnings.push_back(final_set.message);

    return {std::move(final_set.data), std::move(plan)};
}

} // namespace hardscope
