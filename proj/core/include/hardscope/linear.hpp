#pragma once

#include <span>
#include <vector>

#include "hardscope/common.hpp"
#include "hardscope/normalize.hpp"

namespace hardscope {

enum class LinearLoss { logistic, hinge };

struct LinearOptions {
    LinearLoss loss = LinearLoss::hinge;
    /// Inverse regularization strength; the L2 penalty is 1 / (c * n).
    double c = 1.0;
    Index epochs = 200;
};

/// Linear classifier trained by deterministic full-batch (sub)gradient
/// descent on internally standardized features.
///
/// Logistic loss uses a constant step 1 / L where L bounds the gradient's
/// Lipschitz constant on standardized data; hinge loss uses the step
/// 1 / sqrt(t + 1) and keeps the iterate with the lowest objective. Both start
/// from zero, so exchanging the labels negates every iterate exactly.
class LinearModel {
public:
    static LinearModel fit(const Matrix& x, std::span<const Label> y, const LinearOptions& options);

    /// Signed score w.z + b of the standardized row.
    double decision(std::span<const double> row) const;
    Label predict(std::span<const double> row) const { return decision(row) > 0.0 ? 1 : 0; }
    /// Distance from the standardized row to the separating hyperplane.
    double distance(std::span<const double> row) const;

    const std::vector<double>& weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }

private:
    NormalizationSpec scaler_;
    std::vector<double> weights_;
    double bias_ = 0.0;
};

} // namespace hardscope
