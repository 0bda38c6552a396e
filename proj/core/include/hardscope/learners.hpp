#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardscope/dataset.hpp"

namespace hardscope {

enum class Algorithm {
    knn,
    gaussian_nb,
    cart,
    logistic,
    linear_svm,
    mlp,
    random_forest,
    adaboost_stumps,
    greedy_rule_list,
};

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

/// Algorithm plus hyperparameters (stored as text, validated per algorithm).
///
/// Recognized hyperparameters and defaults:
///   knn               k=5
///   gaussian_nb       var_smoothing=1e-9
///   cart              max_depth=none min_samples_split=2 min_samples_leaf=1
///                     criterion=gini max_features=0
///   logistic          C=1 epochs=200
///   linear_svm        C=90 epochs=200
///   mlp               hidden=10 epochs=200 alpha=0.0041 learning_rate=0.01 batch_size=32
///   random_forest     n_estimators=50 max_features=sqrt bootstrap=1 max_depth=none
///                     min_samples_split=2 criterion=gini
///   adaboost_stumps   n_estimators=50 max_depth=1
///   greedy_rule_list  max_depth=5 criterion=gini
struct LearnerSpec {
    Algorithm algorithm = Algorithm::cart;
    std::map<std::string, std::string> hyperparameters;
    std::uint64_t seed = 0;
    /// Display name; defaults to the algorithm name.
    std::string label;

    std::string name() const { return label.empty() ? std::string(to_string(algorithm)) : label; }

    bool has(const std::string& key) const { return hyperparameters.contains(key); }
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::string get_string(const std::string& key, std::string fallback) const;
};

LearnerSpec make_spec(Algorithm algorithm, std::uint64_t seed = 0,
                      std::map<std::string, std::string> hyperparameters = {});

/// Throws Error for unknown hyperparameters or out-of-domain values.
void validate(const LearnerSpec& spec);

/// knn, gaussian_nb, cart, logistic, linear_svm, mlp, random_forest,
/// adaboost_stumps, greedy_rule_list; member j is seeded with derive_seed(seed, j).
std::vector<LearnerSpec> default_pool(std::uint64_t seed = 42);

/// Parses a pool description: a JSON array of
/// {"algorithm": ..., "hyperparameters": {...}, "seed": ..., "name": ...}
/// objects, or plain text with one "algorithm key=value ..." entry per line
/// ('#' starts a comment).
std::vector<LearnerSpec> parse_pool(std::string_view text);

/// Fitted-state interface implemented by each algorithm.
class Predictor {
public:
    virtual ~Predictor() = default;
    virtual Label predict(std::span<const double> row) const = 0;
};

/// Immutable fitted classifier; cheap to copy and safe to share.
class Model {
public:
    Model(LearnerSpec spec, std::shared_ptr<const Predictor> impl, Index num_features, std::string fingerprint);

    const LearnerSpec& spec() const noexcept { return spec_; }
    Index num_features() const noexcept { return num_features_; }
    const std::string& fingerprint() const noexcept { return fingerprint_; }

    Label predict_row(std::span<const double> row) const;
    /// Empty row sets yield an empty result.
    std::vector<Label> predict(const Matrix& rows) const;

private:
    LearnerSpec spec_;
    std::shared_ptr<const Predictor> impl_;
    Index num_features_ = 0;
    std::string fingerprint_;
};

/// Trains `spec` on `train`, which must contain both classes.
Model fit(const LearnerSpec& spec, const Dataset& train, std::string fingerprint = {});

inline std::vector<Label> predict(const Model& model, const Matrix& rows) { return model.predict(rows); }

/// Impurity-decrease importances of a random forest fitted with `spec`
/// (which must be a random_forest spec), one value per feature.
std::vector<double> forest_importances(const LearnerSpec& spec, const Dataset& train);

} // namespace hardscope
