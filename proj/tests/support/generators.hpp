#pragma once

#include <cstdint>

#include "hardscope/dataset.hpp"
#include "hardscope/rng.hpp"

namespace hardscope::testing {

/// Two spherical Gaussians (unit sigma) in m dimensions, class 1 shifted by
/// `separation` along every axis / sqrt(m) (so the centre distance equals
/// `separation`).
Dataset two_gaussians(Index n0, Index n1, double separation, Index m, std::uint64_t seed);

/// Interleaving half-moons with Gaussian coordinate noise and a fraction of
/// flipped labels.
Dataset moons(Index n, double noise, double flip_fraction, std::uint64_t seed);

/// {(0,0)0, (1,1)0, (0,1)1, (1,0)1}
Dataset xor4();

/// Random dataset with both classes. With `discrete` set, coordinates are
/// small integers so distance ties and duplicate rows occur.
Dataset random_dataset(Rng& rng, Index n, Index m, bool discrete = false);

/// The bundled overlapping imbalanced fixture: 500 instances, 100 positive.
Dataset overlap_fixture();

} // namespace hardscope::testing
