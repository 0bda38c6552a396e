#include "hardscope/rng.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace hardscope {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (a + 0x632BE59BD9B4E019ULL));
    h = splitmix64(h ^ (b + 0x85157AF5ULL));
    h = splitmix64(h ^ (c + 0x2545F4914F6CDD1DULL));
    return h;
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
    if (bound == 0) throw Error("rng: empty range");
    // Reject the tail that would bias the modulo.
    const std::uint64_t limit = std::uint64_t(0) - (std::uint64_t(0) - bound) % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (limit == 0 || x < limit) return x % bound;
    }
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal(double mean, double stddev) {
    if (has_spare_) {
        has_spare_ = false;
        return mean + stddev * spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return mean + stddev * radius * std::cos(angle);
}

void Rng::shuffle(std::span<Index> values) {
    for (Index i = values.size(); i > 1; --i) {
        const auto j = static_cast<Index>(uniform_index(i));
        std::swap(values[i - 1], values[j]);
    }
}

IndexList Rng::sample_without_replacement(Index n, Index k) {
    if (k > n) throw Error("rng: sample larger than population");
    IndexList pool(n);
    for (Index i = 0; i < n; ++i) pool[i] = i;
    for (Index i = 0; i < k; ++i) {
        const auto j = i + static_cast<Index>(uniform_index(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace hardscope
