#include "hardscope/ensemble.hpp"

#include <algorithm>
#include <numeric>

#include "hardscope/parallel.hpp"
#include "hardscope/resample.hpp"

namespace hardscope {

Index SelectionDistribution::draw(Rng& rng) const {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (Index i = 0; i < p.size(); ++i) {
        cum += p[i];
        if (u < cum) return instances[i];
    }
    return instances.back();
}

SelectionDistribution selection_probabilities(const IndexList& class_instances, std::span<const double> hardness) {
    const Index n = class_instances.size();
    if (n == 0) throw Error("selection probabilities: empty class");
    if (hardness.size() != n) throw Error("selection probabilities: hardness length mismatch");
    for (double h : hardness) {
        if (!(h >= 0.0 && h <= 1.0)) throw Error("selection probabilities: hardness outside [0, 1]");
    }
    SelectionDistribution out{class_instances, std::vector<double>(n)};
    const bool constant = std::all_of(hardness.begin(), hardness.end(), [&](double h) { return h == hardness[0]; });
    if (constant) {
        std::fill(out.p.begin(), out.p.end(), 1.0 / static_cast<double>(n));
        return out;
    }
    const double base = 1.0 / static_cast<double>(n);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
        out.p[i] = base + (1.0 - hardness[i]);
        total += out.p[i];
    }
    for (double& v : out.p) v /= total;
    return out;
}

EnsembleModel::EnsembleModel(std::vector<Model> models, std::vector<Bag> bags, std::optional<InstanceMeasure> measure,
                             std::uint64_t seed)
    : models_(std::move(models)), bags_(std::move(bags)), measure_(measure), seed_(seed) {
    if (models_.empty()) throw Error("ensemble needs at least one model");
}

double EnsembleModel::vote_fraction(std::span<const double> row) const {
    Index votes = 0;
    for (const Model& m : models_) votes += m.predict_row(row) == 1 ? 1 : 0;
    return static_cast<double>(votes) / static_cast<double>(models_.size());
}

std::vector<double> EnsembleModel::vote_fractions(const Matrix& rows) const {
    std::vector<double> out(rows.rows());
    for (Index i = 0; i < rows.rows(); ++i) out[i] = vote_fraction(rows.row(i));
    return out;
}

std::vector<Label> EnsembleModel::predict(const Matrix& rows) const {
    std::vector<Label> out(rows.rows());
    for (Index i = 0; i < rows.rows(); ++i) out[i] = predict_row(rows.row(i));
    return out;
}

std::vector<IndexList> draw_bags(const Dataset& train, std::span<const double> hardness, Index n_estimators,
                                 std::uint64_t seed) {
    require_both_classes(train, "bagging");
    if (n_estimators < 1) throw Error("bagging: n_estimators must be >= 1");
    if (hardness.size() != train.size()) throw Error("bagging: hardness length mismatch");
    SelectionDistribution dist[2];
    for (Label c : {1, 0}) {
        const IndexList members = train.indices_of(c);
        std::vector<double> h;
        h.reserve(members.size());
        for (Index i : members) h.push_back(hardness[i]);
        dist[c] = selection_probabilities(members, h);
    }
    Rng rng(seed);
    std::vector<IndexList> bags(n_estimators);
    for (IndexList& bag : bags) {
        // Each class is drawn separately, so a bag can never lose a class and
        // the single-class redraw never triggers.
        for (Label c : {1, 0}) {
            for (Index d = 0; d < dist[c].instances.size(); ++d) bag.push_back(dist[c].draw(rng));
        }
    }
    return bags;
}

EnsembleModel hmsmote_bagging_train(const Dataset& train, std::span<const double> hardness,
                                    const BaggingOptions& options, std::optional<InstanceMeasure> measure) {
    const std::vector<IndexList> drawn = draw_bags(train, hardness, options.n_estimators, options.seed);
    validate(options.base);
    std::vector<std::optional<Model>> models(drawn.size());
    std::vector<Bag> bags(drawn.size());
    parallel_for(
        drawn.size(),
        [&](Index b) {
            const Dataset bag = train.subset(drawn[b]);
            const Dataset balanced =
                resample(bag, ResampleSpec{ResampleMethod::smote, options.smote_k, derive_seed(options.seed, 0x5b, b)})
                    .data;
            LearnerSpec spec = options.base;
            spec.seed = derive_seed(options.base.seed, b);
            models[b] = fit(spec, balanced);
            bags[b] = {drawn[b], balanced.class_counts()};
        },
        options.threads);
    std::vector<Model> fitted;
    fitted.reserve(models.size());
    for (auto& m : models) fitted.push_back(std::move(*m));
    return EnsembleModel(std::move(fitted), std::move(bags), measure, options.seed);
}

EnsembleModel hmsmote_bagging_train(const Dataset& train, InstanceMeasure measure, const BaggingOptions& options,
                                    const MeasureOptions& measure_options) {
    const InstanceMeasures all = instance_measures(train, measure_options);
    return hmsmote_bagging_train(train, all[measure], options, measure);
}

EnsembleModel smote_bagging_train(const Dataset& train, const BaggingOptions& options) {
    const std::vector<double> zeros(train.size(), 0.0);
    return hmsmote_bagging_train(train, zeros, options, std::nullopt);
}

} // namespace hardscope
