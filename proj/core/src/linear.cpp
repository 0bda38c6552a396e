#include "hardscope/linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hardscope {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (Index j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

} // namespace

LinearModel LinearModel::fit(const Matrix& x, std::span<const Label> y, const LinearOptions& options) {
    const Index n = x.rows();
    const Index m = x.cols();
    if (n == 0 || y.size() != n) throw Error("linear: bad training data");
    if (options.c <= 0.0) throw Error("linear: C must be positive");

    LinearModel model;
    model.scaler_ = fit_normalizer(x, NormKind::standard);
    const Matrix z = model.scaler_.apply(x);
    const double nd = static_cast<double>(n);
    const double lambda = 1.0 / (options.c * nd);

    std::vector<double> w(m, 0.0);
    double b = 0.0;
    std::vector<double> grad(m);
    std::vector<double> sign(n);
    for (Index i = 0; i < n; ++i) sign[i] = y[i] == 1 ? 1.0 : -1.0;

    if (options.loss == LinearLoss::logistic) {
        const double step = 1.0 / (0.25 * static_cast<double>(m + 1) + lambda);
        for (Index epoch = 0; epoch < options.epochs; ++epoch) {
            std::fill(grad.begin(), grad.end(), 0.0);
            double grad_b = 0.0;
            for (Index i = 0; i < n; ++i) {
                const auto row = z.row(i);
                // d/ds of log(1 + exp(-y s)) with y in {-1, +1}.
                const double g = -sign[i] * sigmoid(-sign[i] * (dot(w, row) + b));
                for (Index j = 0; j < m; ++j) grad[j] += g * row[j];
                grad_b += g;
            }
            for (Index j = 0; j < m; ++j) w[j] -= step * (grad[j] / nd + lambda * w[j]);
            b -= step * grad_b / nd;
        }
        model.weights_ = std::move(w);
        model.bias_ = b;
        return model;
    }

    std::vector<double> best_w = w;
    double best_b = b;
    double best_objective = std::numeric_limits<double>::infinity();
    for (Index epoch = 0; epoch <= options.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_b = 0.0;
        double loss = 0.0;
        for (Index i = 0; i < n; ++i) {
            const auto row = z.row(i);
            const double margin = sign[i] * (dot(w, row) + b);
            if (margin < 1.0) {
                loss += 1.0 - margin;
                for (Index j = 0; j < m; ++j) grad[j] -= sign[i] * row[j];
                grad_b -= sign[i];
            }
        }
        const double objective = 0.5 * lambda * dot(w, w) + loss / nd;
        if (objective < best_objective) {
            best_objective = objective;
            best_w = w;
            best_b = b;
        }
        if (epoch == options.epochs) break;
        const double step = 1.0 / std::sqrt(static_cast<double>(epoch) + 1.0);
        for (Index j = 0; j < m; ++j) w[j] -= step * (grad[j] / nd + lambda * w[j]);
        b -= step * grad_b / nd;
    }
    model.weights_ = std::move(best_w);
    model.bias_ = best_b;
    return model;
}

double LinearModel::decision(std::span<const double> row) const {
    if (row.size() != weights_.size()) throw Error("linear: row width mismatch");
    double s = bias_;
    for (Index j = 0; j < row.size(); ++j) {
        const double zj = scaler_.scale[j] > 0.0 ? (row[j] - scaler_.center[j]) / scaler_.scale[j] : 0.0;
        s += weights_[j] * zj;
    }
    return s;
}

double LinearModel::distance(std::span<const double> row) const {
    const double norm = std::sqrt(dot(weights_, weights_));
    if (norm <= 0.0) return 0.0;
    return std::abs(decision(row)) / norm;
}

} // namespace hardscope
