#pragma once

#include <span>

#include "hardscope/common.hpp"

namespace hardscope {

struct Confusion {
    Index tp = 0;
    Index tn = 0;
    Index fp = 0;
    Index fn = 0;
};

Confusion confusion(std::span<const Label> truth, std::span<const Label> predicted);

/// Matthews correlation coefficient. Returns 0 when any marginal of the
/// confusion matrix is empty.
double mcc(const Confusion& c);
double mcc(std::span<const Label> truth, std::span<const Label> predicted);

/// Classifier Output Difference: fraction of positions where two prediction
/// vectors disagree.
double cod_distance(std::span<const Label> a, std::span<const Label> b);

} // namespace hardscope
