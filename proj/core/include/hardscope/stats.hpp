#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardscope/common.hpp"

namespace hardscope {

/// 1-based ranks with ties sharing their average (mid) rank.
std::vector<double> midranks(std::span<const double> values);

/// Pearson correlation; 0 when either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

enum class Strength { very_weak, weak, moderate, strong, very_strong };

/// Bands on |rho| with cut points 0.2, 0.4, 0.6 and 0.8.
Strength strength_of(double rho);
std::string_view to_string(Strength strength);

struct CorrelationResult {
    double rho = 0.0;
    double p_value = 1.0;
    Index n = 0;
    Strength strength = Strength::very_weak;
    /// Set when an input was constant and rho is undefined.
    bool degenerate = false;

    bool significant(double alpha = 0.05) const { return !degenerate && p_value < alpha; }
};

/// Spearman rank correlation (Pearson on midranks) with a two-sided p-value
/// from the Student-t approximation on n - 2 degrees of freedom.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

struct NamedColumn {
    std::string name;
    std::vector<double> values;
};

struct CorrelationMatrix {
    std::vector<std::string> names;
    /// cells[i][j]; symmetric with rho = 1 on the diagonal.
    std::vector<std::vector<CorrelationResult>> cells;
};

CorrelationMatrix correlation_matrix(const std::vector<NamedColumn>& columns);

struct WilcoxonResult {
    /// Sum of ranks of positive differences.
    double w_plus = 0.0;
    double w_minus = 0.0;
    /// Non-zero differences used.
    Index n = 0;
    double p_value = 1.0;
    bool exact = false;
};

/// Two-sided Wilcoxon signed-rank test on paired samples a - b. Zero
/// differences are dropped. Exact null distribution for up to 25 untied pairs,
/// tie-corrected normal approximation with continuity correction otherwise.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

} // namespace hardscope
