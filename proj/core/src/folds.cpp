#include "hardscope/folds.hpp"

#include <algorithm>
#include <string>

#include "hardscope/rng.hpp"

namespace hardscope {

IndexList EvaluationPlan::train_indices(Index repeat, Index fold) const {
    std::vector<bool> is_test(n, false);
    for (Index i : partitions.at(repeat).at(fold)) is_test[i] = true;
    IndexList out;
    out.reserve(n);
    for (Index i = 0; i < n; ++i) {
        if (!is_test[i]) out.push_back(i);
    }
    return out;
}

EvaluationPlan stratified_folds(const Dataset& data, std::uint64_t seed, Index repeats, Index folds) {
    if (repeats == 0 || folds == 0) throw Error("stratified_folds: repeats and folds must be positive");
    const auto counts = data.class_counts();
    for (Label c : {0, 1}) {
        if (counts[c] < folds) {
            throw Error("stratified_folds: class " + std::to_string(c) + " has " +
                        std::to_string(counts[c]) + " instances, fewer than " +
                        std::to_string(folds) + " folds");
        }
    }

    const IndexList canonical = canonical_order(data);
    std::array<IndexList, 2> members;
    for (Index i : canonical) members[data.label(i)].push_back(i);

    EvaluationPlan plan;
    plan.seed = seed;
    plan.repeats = repeats;
    plan.folds = folds;
    plan.n = data.size();
    plan.partitions.resize(repeats);
    for (Index r = 0; r < repeats; ++r) {
        Rng rng(derive_seed(seed, r));
        auto& parts = plan.partitions[r];
        parts.assign(folds, {});
        Index cursor = 0;
        for (Label c : {0, 1}) {
            IndexList order = members[c];
            rng.shuffle(order);
            for (Index idx : order) {
                parts[cursor].push_back(idx);
                cursor = (cursor + 1) % folds;
            }
        }
        for (auto& p : parts) std::sort(p.begin(), p.end());
    }
    return plan;
}

} // namespace hardscope
