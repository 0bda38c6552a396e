#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hardscope/dataset.hpp"
#include "hardscope/learners.hpp"
#include "hardscope/measures.hpp"
#include "hardscope/rng.hpp"

namespace hardscope {

/// Draw probabilities over the instances of one class.
struct SelectionDistribution {
    IndexList instances;
    std::vector<double> p;

    /// Inverse-CDF draw of one instance index.
    Index draw(Rng& rng) const;
};

/// p_i proportional to 1/n + (1 - h_i) over a class of n instances.
/// Constant hardness gives exactly 1/n each. `hardness` is aligned with
/// `class_instances` and must lie in [0, 1].
SelectionDistribution selection_probabilities(const IndexList& class_instances, std::span<const double> hardness);

struct BaggingOptions {
    Index n_estimators = 50;
    LearnerSpec base = make_spec(Algorithm::cart);
    std::uint64_t seed = 42;
    /// SMOTE neighbours inside each bag.
    Index smote_k = 5;
    unsigned threads = 0;
};

struct Bag {
    /// Drawn training indices in draw order (class 1 draws, then class 0).
    IndexList indices;
    /// Class counts of the bag after SMOTE.
    std::array<Index, 2> balanced_counts{0, 0};
};

/// Mean-vote ensemble; predicts 1 when at least half the members vote 1.
class EnsembleModel {
public:
    EnsembleModel(std::vector<Model> models, std::vector<Bag> bags, std::optional<InstanceMeasure> measure,
                  std::uint64_t seed);

    const std::vector<Model>& models() const noexcept { return models_; }
    const std::vector<Bag>& bags() const noexcept { return bags_; }
    /// Hardness measure that shaped the draws; empty for plain SMOTEBagging.
    const std::optional<InstanceMeasure>& measure() const noexcept { return measure_; }
    std::uint64_t seed() const noexcept { return seed_; }

    double vote_fraction(std::span<const double> row) const;
    Label predict_row(std::span<const double> row) const { return vote_fraction(row) >= 0.5 ? 1 : 0; }
    std::vector<double> vote_fractions(const Matrix& rows) const;
    std::vector<Label> predict(const Matrix& rows) const;

private:
    std::vector<Model> models_;
    std::vector<Bag> bags_;
    std::optional<InstanceMeasure> measure_;
    std::uint64_t seed_;
};

/// Per-class bootstrap indices of every bag, drawn sequentially from one
/// stream seeded with `seed`. Each bag takes |class| draws per class.
std::vector<IndexList> draw_bags(const Dataset& train, std::span<const double> hardness, Index n_estimators,
                                 std::uint64_t seed);

/// Bags drawn with the given per-instance hardness, SMOTE-balanced, one base
/// model per bag.
EnsembleModel hmsmote_bagging_train(const Dataset& train, std::span<const double> hardness,
                                    const BaggingOptions& options, std::optional<InstanceMeasure> measure = {});

/// Computes `measure` once on the whole training set, then trains as above.
EnsembleModel hmsmote_bagging_train(const Dataset& train, InstanceMeasure measure, const BaggingOptions& options,
                                    const MeasureOptions& measure_options = {});

/// Uniform draws (hardness 0 everywhere).
EnsembleModel smote_bagging_train(const Dataset& train, const BaggingOptions& options);

} // namespace hardscope
