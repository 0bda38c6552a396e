#include "hardscope/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace hardscope {

std::vector<double> midranks(std::span<const double> values) {
    const Index n = values.size();
    IndexList order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (Index i = 0; i < n;) {
        Index j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (Index t = i; t <= j; ++t) ranks[order[t]] = rank;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error("pearson: length mismatch");
    const Index n = x.size();
    if (n == 0) return 0.0;
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (Index i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

Strength strength_of(double rho) {
    const double a = std::abs(rho);
    if (a < 0.2) return Strength::very_weak;
    if (a < 0.4) return Strength::weak;
    if (a < 0.6) return Strength::moderate;
    if (a < 0.8) return Strength::strong;
    return Strength::very_strong;
}

std::string_view to_string(Strength strength) {
    switch (strength) {
    case Strength::very_weak: return "very weak";
    case Strength::weak: return "weak";
    case Strength::moderate: return "moderate";
    case Strength::strong: return "strong";
    case Strength::very_strong: return "very strong";
    }
    return "very weak";
}

namespace {

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

} // namespace

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error("spearman: length mismatch");
    if (x.size() < 3) throw Error("spearman: need at least 3 observations");
    CorrelationResult out;
    out.n = x.size();
    if (is_constant(x) || is_constant(y)) {
        out.degenerate = true;
        return out;
    }
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    out.rho = pearson(rx, ry);
    out.strength = strength_of(out.rho);
    if (std::abs(out.rho) >= 1.0) {
        out.p_value = 0.0;
        return out;
    }
    const double df = static_cast<double>(out.n) - 2.0;
    const double t = out.rho * std::sqrt(df / (1.0 - out.rho * out.rho));
    const boost::math::students_t dist(df);
    out.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
    return out;
}

CorrelationMatrix correlation_matrix(const std::vector<NamedColumn>& columns) {
    if (columns.size() < 2) throw Error("correlation_matrix: need at least 2 columns");
    const Index k = columns.size();
    for (const auto& c : columns) {
        if (c.values.size() != columns.front().values.size()) throw Error("correlation_matrix: length mismatch");
    }
    CorrelationMatrix out;
    out.cells.assign(k, std::vector<CorrelationResult>(k));
    for (Index i = 0; i < k; ++i) {
        out.names.push_back(columns[i].name);
        for (Index j = i; j < k; ++j) {
            CorrelationResult r = spearman(columns[i].values, columns[j].values);
            if (i == j && !r.degenerate) {
                r.rho = 1.0;
                r.p_value = 0.0;
                r.strength = Strength::very_strong;
            }
            out.cells[i][j] = r;
            out.cells[j][i] = r;
        }
    }
    return out;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error("wilcoxon: length mismatch");
    std::vector<double> diff;
    for (Index i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diff.push_back(d);
    }
    WilcoxonResult out;
    out.n = diff.size();
    if (out.n == 0) return out;
    std::vector<double> mags(diff.size());
    std::transform(diff.begin(), diff.end(), mags.begin(), [](double d) { return std::abs(d); });
    const auto ranks = midranks(mags);
    for (Index i = 0; i < diff.size(); ++i) (diff[i] > 0.0 ? out.w_plus : out.w_minus) += ranks[i];

    const auto nd = static_cast<double>(out.n);
    bool ties = false;
    for (double r : ranks) ties = ties || r != std::floor(r);
    {
        std::vector<double> sorted = mags;
        std::sort(sorted.begin(), sorted.end());
        ties = ties || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    }
    if (!ties && out.n <= 25) {
        // counts[s] = number of sign assignments with W+ = s.
        const Index max_sum = out.n * (out.n + 1) / 2;
        std::vector<double> counts(max_sum + 1, 0.0);
        counts[0] = 1.0;
        for (Index r = 1; r <= out.n; ++r) {
            for (Index s = max_sum; s >= r; --s) counts[s] += counts[s - r];
        }
        const double total = std::pow(2.0, nd);
        const auto w = static_cast<Index>(std::llround(out.w_plus));
        double lower = 0.0;
        for (Index s = 0; s <= w; ++s) lower += counts[s];
        double upper = 0.0;
        for (Index s = w; s <= max_sum; ++s) upper += counts[s];
        out.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / total);
        out.exact = true;
        return out;
    }
    double tie_term = 0.0;
    {
        std::vector<double> sorted = mags;
        std::sort(sorted.begin(), sorted.end());
        for (Index i = 0; i < sorted.size();) {
            Index j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            const auto t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double mean = nd * (nd + 1.0) / 4.0;
    const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) return out;
    const double dev = std::abs(out.w_plus - mean);
    const double z = std::max(0.0, dev - 0.5) / std::sqrt(var);
    out.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return out;
}

} // namespace hardscope
