#pragma once

#include <cstdint>
#include <vector>

#include "hardscope/dataset.hpp"

namespace hardscope {

/// Seeded repeated stratified k-fold partition.
struct EvaluationPlan {
    std::uint64_t seed = 42;
    Index repeats = 5;
    Index folds = 5;
    /// partitions[repeat][fold] = ascending test indices of that fold.
    std::vector<std::vector<IndexList>> partitions;
    Index n = 0;

    /// Ascending indices of every instance outside `fold` in `repeat`.
    IndexList train_indices(Index repeat, Index fold) const;
    const IndexList& test_indices(Index repeat, Index fold) const {
        return partitions[repeat][fold];
    }
};

/// Builds the plan. Within each class, instances are put in canonical order
/// (see canonical_order), shuffled per repeat with a stream derived from
/// (seed, repeat), then dealt round-robin to folds, continuing the fold cursor
/// from the previous class so fold sizes also stay within one of each other.
EvaluationPlan stratified_folds(const Dataset& data, std::uint64_t seed = 42, Index repeats = 5,
                                Index folds = 5);

} // namespace hardscope
