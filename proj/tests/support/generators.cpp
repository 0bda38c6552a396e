#include "generators.hpp"

#include <cmath>
#include <numbers>

namespace hardscope::testing {

Dataset two_gaussians(Index n0, Index n1, double separation, Index m, std::uint64_t seed) {
    Rng rng(seed);
    Matrix x;
    std::vector<Label> y;
    const double shift = separation / std::sqrt(static_cast<double>(m));
    std::vector<double> row(m);
    for (Index i = 0; i < n0 + n1; ++i) {
        const Label c = i < n0 ? 0 : 1;
        for (Index f = 0; f < m; ++f) row[f] = rng.normal() + (c == 1 ? shift : 0.0);
        x.append_row(row);
        y.push_back(c);
    }
    return Dataset(std::move(x), std::move(y), {}, "two_gaussians");
}

Dataset moons(Index n, double noise, double flip_fraction, std::uint64_t seed) {
    Rng rng(seed);
    Matrix x;
    std::vector<Label> y;
    for (Index i = 0; i < n; ++i) {
        const Label c = i % 2 == 0 ? 0 : 1;
        const double t = std::numbers::pi * rng.uniform01();
        double px = c == 0 ? std::cos(t) : 1.0 - std::cos(t);
        double py = c == 0 ? std::sin(t) : 0.5 - std::sin(t);
        px += rng.normal(0.0, noise);
        py += rng.normal(0.0, noise);
        x.append_row(std::vector<double>{px, py});
        y.push_back(c);
    }
    const auto flips = static_cast<Index>(std::llround(flip_fraction * static_cast<double>(n)));
    for (Index i : rng.sample_without_replacement(n, flips)) y[i] = 1 - y[i];
    return Dataset(std::move(x), std::move(y), {"x", "y"}, "moons");
}

Dataset xor4() {
    return Dataset(Matrix::from_rows({{0, 0}, {1, 1}, {0, 1}, {1, 0}}), {0, 0, 1, 1}, {}, "xor4");
}

Dataset random_dataset(Rng& rng, Index n, Index m, bool discrete) {
    Matrix x(n, m);
    for (Index i = 0; i < n; ++i) {
        for (Index f = 0; f < m; ++f) {
            x(i, f) = discrete ? static_cast<double>(rng.uniform_index(4)) : rng.normal();
        }
    }
    std::vector<Label> y(n);
    const double p = 0.15 + 0.7 * rng.uniform01();
    for (Index i = 0; i < n; ++i) y[i] = rng.uniform01() < p ? 1 : 0;
    // Guarantee both classes.
    y[0] = 0;
    y[1] = 1;
    return Dataset(std::move(x), std::move(y), {}, "random");
}

Dataset overlap_fixture() {
    Rng rng(20240611);
    constexpr Index n = 500;
    constexpr Index positives = 100;
    constexpr Index m = 4;
    Matrix x;
    std::vector<Label> y;
    std::vector<double> row(m);
    for (Index i = 0; i < n; ++i) {
        const Label c = i < positives ? 1 : 0;
        for (Index f = 0; f < m; ++f) {
            const double centre = (c == 1 && f < 2) ? 1.0 : 0.0;
            row[f] = rng.normal(centre, 1.0);
        }
        x.append_row(row);
        y.push_back(c);
    }
    return Dataset(std::move(x), std::move(y), {"m0", "m1", "m2", "m3"}, "overlap_500");
}

} // namespace hardscope::testing
