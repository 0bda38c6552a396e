#include "hardscope/hardness.hpp"

#include <algorithm>
#include <numeric>

#include "hardscope/metrics.hpp"
#include "hardscope/parallel.hpp"
#include "hardscope/rng.hpp"

namespace hardscope {

Matrix PreparedFold::transform(const Matrix& rows) const {
    return normalizer.apply(rows).select_cols(kept_features);
}

PreparedFold prepare_fold(const Dataset& data, const IndexList& rows, const BaselinePipeline& pipeline,
                          std::uint64_t seed) {
    // Canonical order of the selected rows.
    const Dataset picked = data.subset(rows);
    const IndexList order = canonical_order(picked);
    Dataset train = picked.subset(order);

    NormalizationSpec normalizer = fit_normalizer(train, pipeline.normalization);
    train = normalizer.apply(train);

    FeatureSelectSpec fs = pipeline.selector;
    fs.seed = derive_seed(seed, 0xf5);
    FeatureSelection selection = select_features(train, fs);
    train = selection.data;

    if (pipeline.resampler) {
        ResampleSpec rs = *pipeline.resampler;
        rs.seed = derive_seed(seed, 0x5a);
        train = resample(train, rs).data;
    }
    return {std::move(train), std::move(normalizer), std::move(selection.kept)};
}

PoolPredictions run_pool_cv(const Dataset& data, const std::vector<LearnerSpec>& pool, const EvaluationPlan& plan,
                            const BaselinePipeline& pipeline, unsigned threads) {
    if (pool.empty()) throw Error("pool is empty");
    if (plan.n != data.size()) throw Error("evaluation plan does not match the dataset size");
    require_both_classes(data, "cross-validation");
    PoolPredictions out;
    out.repeats = plan.repeats;
    out.n = data.size();
    for (const auto& spec : pool) out.learners.push_back(spec.name());
    out.predictions.assign(plan.repeats,
                           std::vector<std::vector<int>>(pool.size(), std::vector<int>(data.size(), -1)));

    const Index cells = plan.repeats * plan.folds;
    std::vector<std::vector<std::string>> errors(cells);
    std::vector<std::string> fatal(cells);
    parallel_for(
        cells,
        [&](Index cell) {
            const Index r = cell / plan.folds;
            const Index f = cell % plan.folds;
            const IndexList& test = plan.test_indices(r, f);
            if (test.empty()) return;
            PreparedFold prepared = [&] {
                try {
                    return prepare_fold(data, plan.train_indices(r, f), pipeline, derive_seed(plan.seed, r, f));
                } catch (const Error& e) {
                    fatal[cell] = "repeat " + std::to_string(r) + " fold " + std::to_string(f) +
                                  ": preprocessing failed: " + e.what();
                    throw;
                }
            }();
            const Matrix test_x = prepared.transform(data.features().select_rows(test));
            Index ok = 0;
            for (Index l = 0; l < pool.size(); ++l) {
                try {
                    const Model model = fit(pool[l], prepared.train);
                    const auto pred = model.predict(test_x);
                    for (Index t = 0; t < test.size(); ++t) out.predictions[r][l][test[t]] = pred[t];
                    ++ok;
                } catch (const Error& e) {
                    errors[cell].push_back("repeat " + std::to_string(r) + " fold " + std::to_string(f) + " " +
                                           pool[l].name() + ": " + e.what());
                }
            }
            if (ok == 0) {
                fatal[cell] = "repeat " + std::to_string(r) + " fold " + std::to_string(f) +
                              ": every learner failed (" + errors[cell].front() + ")";
                throw Error(fatal[cell]);
            }
        },
        threads);
    for (auto& e : errors) out.failures.insert(out.failures.end(), e.begin(), e.end());
    return out;
}

HardnessReport hardness_from_predictions(const Dataset& data, const PoolPredictions& predictions) {
    const Index n = data.size();
    if (predictions.n != n) throw Error("predictions do not match the dataset size");
    HardnessReport report;
    report.labels = data.labels();
    report.learners = predictions.learners;
    report.warnings = predictions.failures;
    const Index pool = predictions.learners.size();
    std::vector<Index> wrong(n, 0);
    std::vector<Index> total(n, 0);
    report.ih_by_learner.assign(pool, std::vector<double>(n, 0.0));
    for (Index l = 0; l < pool; ++l) {
        std::vector<Index> lw(n, 0);
        std::vector<Index> lt(n, 0);
        for (Index r = 0; r < predictions.repeats; ++r) {
            const auto& p = predictions.predictions[r][l];
            for (Index i = 0; i < n; ++i) {
                if (p[i] < 0) continue;
                ++lt[i];
                if (p[i] != data.label(i)) ++lw[i];
            }
        }
        for (Index i = 0; i < n; ++i) {
            wrong[i] += lw[i];
            total[i] += lt[i];
            report.ih_by_learner[l][i] = lt[i] > 0 ? static_cast<double>(lw[i]) / static_cast<double>(lt[i]) : 0.0;
        }
    }
    report.ih.assign(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        if (total[i] == 0) throw Error("instance " + std::to_string(i) + " received no prediction");
        report.ih[i] = static_cast<double>(wrong[i]) / static_cast<double>(total[i]);
    }
    return report;
}

HardnessReport estimate_ih(const Dataset& data, const std::vector<LearnerSpec>& pool, const EvaluationPlan& plan,
                           const BaselinePipeline& pipeline, unsigned threads) {
    return hardness_from_predictions(data, run_pool_cv(data, pool, plan, pipeline, threads));
}

HardnessReport analyze_instances(const Dataset& data, const std::vector<LearnerSpec>& pool,
                                 const EvaluationPlan& plan, const BaselinePipeline& pipeline,
                                 const MeasureOptions& measure_options, unsigned threads) {
    HardnessReport report = estimate_ih(data, pool, plan, pipeline, threads);
    report.measures = instance_measures(data, measure_options);
    return report;
}

double dsh(const std::vector<double>& ih) {
    if (ih.empty()) throw Error("dsh: empty report");
    return std::accumulate(ih.begin(), ih.end(), 0.0) / static_cast<double>(ih.size());
}

double dsh(const HardnessReport& report) { return dsh(report.ih); }

std::vector<double> learner_mcc(const Dataset& data, const PoolPredictions& predictions) {
    if (predictions.n != data.size()) throw Error("predictions do not match the dataset size");
    std::vector<double> out;
    for (Index l = 0; l < predictions.learners.size(); ++l) {
        double sum = 0.0;
        Index used = 0;
        for (Index r = 0; r < predictions.repeats; ++r) {
            std::vector<Label> truth;
            std::vector<Label> pred;
            for (Index i = 0; i < data.size(); ++i) {
                const int p = predictions.predictions[r][l][i];
                if (p < 0) continue;
                truth.push_back(data.label(i));
                pred.push_back(p);
            }
            if (truth.empty()) continue;
            sum += mcc(truth, pred);
            ++used;
        }
        out.push_back(used > 0 ? sum / static_cast<double>(used) : 0.0);
    }
    return out;
}

double idsh(const Dataset& data, const PoolPredictions& predictions) {
    const auto per_learner = learner_mcc(data, predictions);
    if (per_learner.empty()) throw Error("idsh: empty pool");
    return 1.0 - std::accumulate(per_learner.begin(), per_learner.end(), 0.0) /
                     static_cast<double>(per_learner.size());
}

double idsh(const Dataset& data, const std::vector<LearnerSpec>& pool, const EvaluationPlan& plan,
            const BaselinePipeline& pipeline, unsigned threads) {
    return idsh(data, run_pool_cv(data, pool, plan, pipeline, threads));
}

} // namespace hardscope
