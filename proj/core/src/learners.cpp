#include "hardscope/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hardscope/linear.hpp"
#include "hardscope/normalize.hpp"
#include "hardscope/rng.hpp"
#include "hardscope/tree.hpp"

namespace hardscope {

namespace {

constexpr std::pair<Algorithm, std::string_view> kAlgorithmNames[] = {
    {Algorithm::knn, "knn"},
    {Algorithm::gaussian_nb, "gaussian_nb"},
    {Algorithm::cart, "cart"},
    {Algorithm::logistic, "logistic"},
    {Algorithm::linear_svm, "linear_svm"},
    {Algorithm::mlp, "mlp"},
    {Algorithm::random_forest, "random_forest"},
    {Algorithm::adaboost_stumps, "adaboost_stumps"},
    {Algorithm::greedy_rule_list, "greedy_rule_list"},
};

const std::map<Algorithm, std::vector<std::string>>& known_hyperparameters() {
    static const std::map<Algorithm, std::vector<std::string>> known = {
        {Algorithm::knn, {"k"}},
        {Algorithm::gaussian_nb, {"var_smoothing"}},
        {Algorithm::cart, {"max_depth", "min_samples_split", "min_samples_leaf", "criterion", "max_features"}},
        {Algorithm::logistic, {"C", "epochs"}},
        {Algorithm::linear_svm, {"C", "epochs"}},
        {Algorithm::mlp, {"hidden", "epochs", "alpha", "learning_rate", "batch_size"}},
        {Algorithm::random_forest,
         {"n_estimators", "max_features", "bootstrap", "max_depth", "min_samples_split", "criterion"}},
        {Algorithm::adaboost_stumps, {"n_estimators", "max_depth"}},
        {Algorithm::greedy_rule_list, {"max_depth", "criterion"}},
    };
    return known;
}

Criterion criterion_of(const LearnerSpec& spec) {
    const auto c = spec.get_string("criterion", "gini");
    if (c == "gini") return Criterion::gini;
    if (c == "entropy") return Criterion::entropy;
    throw Error(spec.name() + ": criterion must be gini or entropy");
}

int depth_of(const LearnerSpec& spec, int fallback) {
    if (!spec.has("max_depth")) return fallback;
    const auto text = spec.get_string("max_depth", "");
    if (text == "none" || text == "unlimited") return -1;
    const auto d = spec.get_int("max_depth", fallback);
    if (d < 1) throw Error(spec.name() + ": max_depth must be >= 1 or none");
    return static_cast<int>(d);
}

// --- knn -------------------------------------------------------------------

class KnnPredictor final : public Predictor {
public:
    KnnPredictor(Matrix x, std::vector<Label> y, Index k) : x_(std::move(x)), y_(std::move(y)), k_(k) {}

    Label predict(std::span<const double> row) const override {
        const Index n = x_.rows();
        std::vector<std::pair<double, Index>> d(n);
        for (Index i = 0; i < n; ++i) {
            double ss = 0.0;
            const auto r = x_.row(i);
            for (Index j = 0; j < row.size(); ++j) {
                const double t = r[j] - row[j];
                ss += t * t;
            }
            d[i] = {ss, i};
        }
        const Index k = std::min(k_, n);
        std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
        Index votes = 0;
        for (Index t = 0; t < k; ++t) votes += static_cast<Index>(y_[d[t].second]);
        if (2 * votes > k) return 1;
        if (2 * votes < k) return 0;
        return y_[d[0].second];
    }

private:
    Matrix x_;
    std::vector<Label> y_;
    Index k_;
};

// --- gaussian naive bayes --------------------------------------------------

class NaiveBayesPredictor final : public Predictor {
public:
    NaiveBayesPredictor(const Dataset& train, double smoothing) {
        const Index m = train.num_features();
        const auto counts = train.class_counts();
        double max_var = 0.0;
        for (Index j = 0; j < m; ++j) {
            const auto col = train.features().column(j);
            const double mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
            double ss = 0.0;
            for (double v : col) ss += (v - mean) * (v - mean);
            max_var = std::max(max_var, ss / static_cast<double>(col.size()));
        }
        const double eps = smoothing * max_var;
        for (Label c : {0, 1}) {
            mean_[c].assign(m, 0.0);
            var_[c].assign(m, 0.0);
            log_prior_[c] = std::log(static_cast<double>(counts[c]) / static_cast<double>(train.size()));
        }
        for (Index i = 0; i < train.size(); ++i) {
            for (Index j = 0; j < m; ++j) mean_[train.label(i)][j] += train.features()(i, j);
        }
        for (Label c : {0, 1}) {
            for (double& v : mean_[c]) v /= static_cast<double>(counts[c]);
        }
        for (Index i = 0; i < train.size(); ++i) {
            const Label c = train.label(i);
            for (Index j = 0; j < m; ++j) {
                const double d = train.features()(i, j) - mean_[c][j];
                var_[c][j] += d * d;
            }
        }
        for (Label c : {0, 1}) {
            for (double& v : var_[c]) {
                v = v / static_cast<double>(counts[c]) + eps;
                // Guard fully constant data, where max_var is zero.
                if (v <= 0.0) v = 1e-12;
            }
        }
    }

    Label predict(std::span<const double> row) const override {
        double score[2];
        for (Label c : {0, 1}) {
            double s = log_prior_[c];
            for (Index j = 0; j < row.size(); ++j) {
                const double d = row[j] - mean_[c][j];
                s -= 0.5 * (std::log(2.0 * std::numbers::pi * var_[c][j]) + d * d / var_[c][j]);
            }
            score[c] = s;
        }
        return score[1] > score[0] ? 1 : 0;
    }

private:
    std::vector<double> mean_[2];
    std::vector<double> var_[2];
    double log_prior_[2] = {0.0, 0.0};
};

// --- trees -----------------------------------------------------------------

class TreePredictor final : public Predictor {
public:
    explicit TreePredictor(DecisionTree tree) : tree_(std::move(tree)) {}
    Label predict(std::span<const double> row) const override { return tree_.predict(row); }

private:
    DecisionTree tree_;
};

class ForestPredictor final : public Predictor {
public:
    explicit ForestPredictor(std::vector<DecisionTree> trees) : trees_(std::move(trees)) {}
    Label predict(std::span<const double> row) const override {
        double sum = 0.0;
        for (const auto& t : trees_) sum += t.positive_fraction(row);
        return sum / static_cast<double>(trees_.size()) > 0.5 ? 1 : 0;
    }
    const std::vector<DecisionTree>& trees() const { return trees_; }

private:
    std::vector<DecisionTree> trees_;
};

class BoostPredictor final : public Predictor {
public:
    void add(DecisionTree stump, double alpha) {
        stumps_.push_back(std::move(stump));
        alphas_.push_back(alpha);
    }
    Label predict(std::span<const double> row) const override {
        double s = 0.0;
        for (Index t = 0; t < stumps_.size(); ++t) s += alphas_[t] * (stumps_[t].predict(row) == 1 ? 1.0 : -1.0);
        return s > 0.0 ? 1 : 0;
    }

private:
    std::vector<DecisionTree> stumps_;
    std::vector<double> alphas_;
};

class LinearPredictor final : public Predictor {
public:
    explicit LinearPredictor(LinearModel model) : model_(std::move(model)) {}
    Label predict(std::span<const double> row) const override { return model_.predict(row); }

private:
    LinearModel model_;
};

// --- mlp -------------------------------------------------------------------

class MlpPredictor final : public Predictor {
public:
    MlpPredictor(const Dataset& train, Index hidden, Index epochs, double alpha, double lr, Index batch,
                 std::uint64_t seed)
        : hidden_(hidden) {
        scaler_ = fit_normalizer(train, NormKind::standard);
        const Matrix z = scaler_.apply(train.features());
        const Index n = z.rows();
        const Index m = z.cols();
        m_ = m;
        Rng rng(seed);
        const double lim1 = std::sqrt(6.0 / static_cast<double>(m + hidden));
        const double lim2 = std::sqrt(6.0 / static_cast<double>(hidden + 1));
        w1_.resize(hidden * m);
        for (double& v : w1_) v = rng.uniform(-lim1, lim1);
        b1_.assign(hidden, 0.0);
        w2_.resize(hidden);
        for (double& v : w2_) v = rng.uniform(-lim2, lim2);
        b2_ = 0.0;

        // Adam state, one slot per parameter laid out as [w1, b1, w2, b2].
        const Index p = hidden * m + hidden + hidden + 1;
        std::vector<double> mom(p, 0.0), vel(p, 0.0), grad(p, 0.0);
        constexpr double beta1 = 0.9;
        constexpr double beta2 = 0.999;
        constexpr double eps = 1e-8;
        double beta1_t = 1.0;
        double beta2_t = 1.0;
        IndexList order(n);
        std::iota(order.begin(), order.end(), Index{0});
        std::vector<double> h(hidden);
        batch = std::max<Index>(1, std::min(batch, n));
        for (Index epoch = 0; epoch < epochs; ++epoch) {
            rng.shuffle(order);
            for (Index start = 0; start < n; start += batch) {
                const Index stop = std::min(n, start + batch);
                std::fill(grad.begin(), grad.end(), 0.0);
                for (Index t = start; t < stop; ++t) {
                    const Index i = order[t];
                    const auto row = z.row(i);
                    double out = b2_;
                    for (Index u = 0; u < hidden; ++u) {
                        double a = b1_[u];
                        for (Index j = 0; j < m; ++j) a += w1_[u * m + j] * row[j];
                        h[u] = std::tanh(a);
                        out += w2_[u] * h[u];
                    }
                    const double p_hat = out >= 0 ? 1.0 / (1.0 + std::exp(-out)) : std::exp(out) / (1.0 + std::exp(out));
                    const double delta = p_hat - static_cast<double>(train.label(i));
                    for (Index u = 0; u < hidden; ++u) {
                        grad[hidden * m + hidden + u] += delta * h[u];
                        const double dh = delta * w2_[u] * (1.0 - h[u] * h[u]);
                        for (Index j = 0; j < m; ++j) grad[u * m + j] += dh * row[j];
                        grad[hidden * m + u] += dh;
                    }
                    grad[p - 1] += delta;
                }
                const double bs = static_cast<double>(stop - start);
                for (double& g : grad) g /= bs;
                for (Index q = 0; q < hidden * m; ++q) grad[q] += alpha * w1_[q] / static_cast<double>(n);
                for (Index u = 0; u < hidden; ++u) grad[hidden * m + hidden + u] += alpha * w2_[u] / static_cast<double>(n);
                beta1_t *= beta1;
                beta2_t *= beta2;
                for (Index q = 0; q < p; ++q) {
                    mom[q] = beta1 * mom[q] + (1.0 - beta1) * grad[q];
                    vel[q] = beta2 * vel[q] + (1.0 - beta2) * grad[q] * grad[q];
                    const double step = lr * (mom[q] / (1.0 - beta1_t)) / (std::sqrt(vel[q] / (1.0 - beta2_t)) + eps);
                    param(q) -= step;
                }
            }
        }
    }

    Label predict(std::span<const double> row) const override {
        double out = b2_;
        for (Index u = 0; u < hidden_; ++u) {
            double a = b1_[u];
            for (Index j = 0; j < m_; ++j) {
                const double zj = scaler_.scale[j] > 0.0 ? (row[j] - scaler_.center[j]) / scaler_.scale[j] : 0.0;
                a += w1_[u * m_ + j] * zj;
            }
            out += w2_[u] * std::tanh(a);
        }
        return out > 0.0 ? 1 : 0;
    }

private:
    double& param(Index q) {
        const Index nw1 = hidden_ * m_;
        if (q < nw1) return w1_[q];
        if (q < nw1 + hidden_) return b1_[q - nw1];
        if (q < nw1 + 2 * hidden_) return w2_[q - nw1 - hidden_];
        return b2_;
    }

    Index hidden_ = 10;
    Index m_ = 0;
    NormalizationSpec scaler_;
    std::vector<double> w1_, b1_, w2_;
    double b2_ = 0.0;
};

Index forest_max_features(const LearnerSpec& spec, Index m) {
    const auto text = spec.get_string("max_features", "sqrt");
    if (text == "sqrt") return std::max<Index>(1, static_cast<Index>(std::floor(std::sqrt(static_cast<double>(m)))));
    if (text == "log2") return std::max<Index>(1, static_cast<Index>(std::floor(std::log2(static_cast<double>(m)))));
    if (text == "all") return m;
    const double v = spec.get_double("max_features", 0.0);
    if (v > 0.0 && v < 1.0) return std::max<Index>(1, static_cast<Index>(std::floor(v * static_cast<double>(m))));
    if (v >= 1.0) return std::min<Index>(m, static_cast<Index>(v));
    throw Error(spec.name() + ": bad max_features '" + text + "'");
}

std::vector<DecisionTree> grow_forest(const LearnerSpec& spec, const Dataset& train) {
    const Index m = train.num_features();
    const Index n = train.size();
    TreeOptions options;
    options.criterion = criterion_of(spec);
    options.max_depth = depth_of(spec, -1);
    options.min_samples_split = static_cast<Index>(spec.get_int("min_samples_split", 2));
    options.max_features = forest_max_features(spec, m);
    const bool bootstrap = spec.get_int("bootstrap", 1) != 0;
    const auto count = static_cast<Index>(spec.get_int("n_estimators", 50));
    Rng rng(spec.seed);
    std::vector<DecisionTree> trees;
    trees.reserve(count);
    for (Index t = 0; t < count; ++t) {
        IndexList rows(n);
        if (bootstrap) {
            for (Index& r : rows) r = static_cast<Index>(rng.uniform_index(n));
            std::sort(rows.begin(), rows.end());
        } else {
            std::iota(rows.begin(), rows.end(), Index{0});
        }
        trees.push_back(DecisionTree::fit(train.features(), train.labels(), {}, options, &rng, rows));
    }
    return trees;
}

} // namespace

std::string_view to_string(Algorithm algorithm) {
    for (const auto& [a, name] : kAlgorithmNames) {
        if (a == algorithm) return name;
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
    for (const auto& [a, name] : kAlgorithmNames) {
        if (name == text) return a;
    }
    throw Error("unknown algorithm '" + std::string(text) + "'");
}

double LearnerSpec::get_double(const std::string& key, double fallback) const {
    const auto it = hyperparameters.find(key);
    if (it == hyperparameters.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw Error("");
        return v;
    } catch (...) {
        throw Error(name() + ": hyperparameter " + key + "='" + it->second + "' is not numeric");
    }
}

long long LearnerSpec::get_int(const std::string& key, long long fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    if (v != std::floor(v)) throw Error(name() + ": hyperparameter " + key + " must be an integer");
    return static_cast<long long>(v);
}

std::string LearnerSpec::get_string(const std::string& key, std::string fallback) const {
    const auto it = hyperparameters.find(key);
    return it == hyperparameters.end() ? fallback : it->second;
}

LearnerSpec make_spec(Algorithm algorithm, std::uint64_t seed, std::map<std::string, std::string> hyperparameters) {
    LearnerSpec spec;
    spec.algorithm = algorithm;
    spec.seed = seed;
    spec.hyperparameters = std::move(hyperparameters);
    validate(spec);
    return spec;
}

void validate(const LearnerSpec& spec) {
    const auto& known = known_hyperparameters().at(spec.algorithm);
    for (const auto& [key, value] : spec.hyperparameters) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(spec.name() + ": unknown hyperparameter '" + key + "'");
        }
    }
    auto positive_int = [&](const std::string& key, long long fallback) {
        if (spec.get_int(key, fallback) < 1) throw Error(spec.name() + ": " + key + " must be >= 1");
    };
    auto positive = [&](const std::string& key, double fallback) {
        if (!(spec.get_double(key, fallback) > 0.0)) throw Error(spec.name() + ": " + key + " must be > 0");
    };
    switch (spec.algorithm) {
    case Algorithm::knn: positive_int("k", 5); break;
    case Algorithm::gaussian_nb:
        if (spec.get_double("var_smoothing", 1e-9) < 0.0) throw Error(spec.name() + ": var_smoothing must be >= 0");
        break;
    case Algorithm::cart:
        depth_of(spec, -1);
        criterion_of(spec);
        if (spec.get_int("min_samples_split", 2) < 2) throw Error(spec.name() + ": min_samples_split must be >= 2");
        positive_int("min_samples_leaf", 1);
        if (spec.get_int("max_features", 0) < 0) throw Error(spec.name() + ": max_features must be >= 0");
        break;
    case Algorithm::logistic:
        positive("C", 1.0);
        positive_int("epochs", 200);
        break;
    case Algorithm::linear_svm:
        positive("C", 90.0);
        positive_int("epochs", 200);
        break;
    case Algorithm::mlp:
        positive_int("hidden", 10);
        positive_int("epochs", 200);
        positive_int("batch_size", 32);
        positive("learning_rate", 0.01);
        if (spec.get_double("alpha", 0.0041) < 0.0) throw Error(spec.name() + ": alpha must be >= 0");
        break;
    case Algorithm::random_forest:
        positive_int("n_estimators", 50);
        depth_of(spec, -1);
        criterion_of(spec);
        forest_max_features(spec, 16);
        if (spec.get_int("min_samples_split", 2) < 2) throw Error(spec.name() + ": min_samples_split must be >= 2");
        break;
    case Algorithm::adaboost_stumps:
        positive_int("n_estimators", 50);
        depth_of(spec, 1);
        break;
    case Algorithm::greedy_rule_list:
        depth_of(spec, 5);
        criterion_of(spec);
        break;
    }
}

std::vector<LearnerSpec> default_pool(std::uint64_t seed) {
    std::vector<LearnerSpec> pool;
    std::uint64_t j = 0;
    for (const auto& [algorithm, name] : kAlgorithmNames) pool.push_back(make_spec(algorithm, derive_seed(seed, j++)));
    return pool;
}

std::vector<LearnerSpec> parse_pool(std::string_view text) {
    std::vector<LearnerSpec> pool;
    std::string_view trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    if (!trimmed.empty() && trimmed.front() == '[') {
        try {
            const auto doc = nlohmann::json::parse(trimmed);
            if (!doc.is_array()) throw Error("pool: expected a JSON array");
            std::uint64_t j = 0;
            for (const auto& entry : doc) {
                LearnerSpec spec;
                spec.algorithm = parse_algorithm(entry.at("algorithm").get<std::string>());
                spec.seed = entry.contains("seed") ? entry["seed"].get<std::uint64_t>() : derive_seed(42, j);
                if (entry.contains("name")) spec.label = entry["name"].get<std::string>();
                if (entry.contains("hyperparameters")) {
                    for (const auto& [key, value] : entry["hyperparameters"].items()) {
                        spec.hyperparameters[key] = value.is_string() ? value.get<std::string>() : value.dump();
                    }
                }
                validate(spec);
                pool.push_back(std::move(spec));
                ++j;
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("pool: invalid JSON: ") + e.what());
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        std::uint64_t j = 0;
        while (std::getline(in, line)) {
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream words(line);
            std::string word;
            if (!(words >> word)) continue;
            LearnerSpec spec;
            spec.algorithm = parse_algorithm(word);
            spec.seed = derive_seed(42, j);
            while (words >> word) {
                const auto eq = word.find('=');
                if (eq == std::string::npos) throw Error("pool: expected key=value, got '" + word + "'");
                const auto key = word.substr(0, eq);
                const auto value = word.substr(eq + 1);
                if (key == "seed") {
                    spec.seed = std::stoull(value);
                } else if (key == "name") {
                    spec.label = value;
                } else {
                    spec.hyperparameters[key] = value;
                }
            }
            validate(spec);
            pool.push_back(std::move(spec));
            ++j;
        }
    }
    if (pool.empty()) throw Error("pool: no learners");
    return pool;
}

Model::Model(LearnerSpec spec, std::shared_ptr<const Predictor> impl, Index num_features, std::string fingerprint)
    : spec_(std::move(spec)), impl_(std::move(impl)), num_features_(num_features), fingerprint_(std::move(fingerprint)) {}

Label Model::predict_row(std::span<const double> row) const {
    if (row.size() != num_features_) {
        throw Error("predict: row has " + std::to_string(row.size()) + " features, model expects " +
                    std::to_string(num_features_));
    }
    return impl_->predict(row);
}

std::vector<Label> Model::predict(const Matrix& rows) const {
    std::vector<Label> out;
    if (rows.rows() == 0) return out;
    if (rows.cols() != num_features_) {
        throw Error("predict: rows have " + std::to_string(rows.cols()) + " features, model expects " +
                    std::to_string(num_features_));
    }
    out.reserve(rows.rows());
    for (Index i = 0; i < rows.rows(); ++i) out.push_back(impl_->predict(rows.row(i)));
    return out;
}

Model fit(const LearnerSpec& spec, const Dataset& train, std::string fingerprint) {
    validate(spec);
    if (!train.has_both_classes()) {
        throw Error("fit " + spec.name() + ": training data must contain both classes");
    }
    const Index m = train.num_features();
    std::shared_ptr<const Predictor> impl;
    switch (spec.algorithm) {
    case Algorithm::knn:
        impl = std::make_shared<KnnPredictor>(train.features(), train.labels(), static_cast<Index>(spec.get_int("k", 5)));
        break;
    case Algorithm::gaussian_nb:
        impl = std::make_shared<NaiveBayesPredictor>(train, spec.get_double("var_smoothing", 1e-9));
        break;
    case Algorithm::cart:
    case Algorithm::greedy_rule_list: {
        TreeOptions options;
        options.criterion = criterion_of(spec);
        if (spec.algorithm == Algorithm::cart) {
            options.max_depth = depth_of(spec, -1);
            options.min_samples_split = static_cast<Index>(spec.get_int("min_samples_split", 2));
            options.min_samples_leaf = static_cast<Index>(spec.get_int("min_samples_leaf", 1));
            options.max_features = static_cast<Index>(spec.get_int("max_features", 0));
        } else {
            options.max_depth = depth_of(spec, 5);
            options.decision_list = true;
        }
        Rng rng(spec.seed);
        impl = std::make_shared<TreePredictor>(
            DecisionTree::fit(train.features(), train.labels(), {}, options, &rng));
        break;
    }
    case Algorithm::logistic:
    case Algorithm::linear_svm: {
        LinearOptions options;
        const bool svm = spec.algorithm == Algorithm::linear_svm;
        options.loss = svm ? LinearLoss::hinge : LinearLoss::logistic;
        options.c = spec.get_double("C", svm ? 90.0 : 1.0);
        options.epochs = static_cast<Index>(spec.get_int("epochs", 200));
        impl = std::make_shared<LinearPredictor>(LinearModel::fit(train.features(), train.labels(), options));
        break;
    }
    case Algorithm::mlp:
        impl = std::make_shared<MlpPredictor>(
            train, static_cast<Index>(spec.get_int("hidden", 10)), static_cast<Index>(spec.get_int("epochs", 200)),
            spec.get_double("alpha", 0.0041), spec.get_double("learning_rate", 0.01),
            static_cast<Index>(spec.get_int("batch_size", 32)), spec.seed);
        break;
    case Algorithm::random_forest:
        impl = std::make_shared<ForestPredictor>(grow_forest(spec, train));
        break;
    case Algorithm::adaboost_stumps: {
        TreeOptions options;
        options.max_depth = depth_of(spec, 1);
        const auto rounds = static_cast<Index>(spec.get_int("n_estimators", 50));
        const Index n = train.size();
        std::vector<double> w(n, 1.0 / static_cast<double>(n));
        auto boost = std::make_shared<BoostPredictor>();
        for (Index t = 0; t < rounds; ++t) {
            auto stump = DecisionTree::fit(train.features(), train.labels(), w, options);
            double err = 0.0;
            double total = 0.0;
            std::vector<bool> miss(n);
            for (Index i = 0; i < n; ++i) {
                miss[i] = stump.predict(train.row(i)) != train.label(i);
                if (miss[i]) err += w[i];
                total += w[i];
            }
            err /= total;
            if (err >= 0.5) {
                if (t == 0) boost->add(std::move(stump), 1.0);
                break;
            }
            if (err <= 1e-12) {
                boost->add(std::move(stump), 10.0);
                break;
            }
            const double alpha = 0.5 * std::log((1.0 - err) / err);
            boost->add(std::move(stump), alpha);
            double norm = 0.0;
            for (Index i = 0; i < n; ++i) {
                w[i] *= std::exp(miss[i] ? alpha : -alpha);
                norm += w[i];
            }
            for (double& v : w) v /= norm;
        }
        impl = boost;
        break;
    }
    }
    if (fingerprint.empty()) fingerprint = train.id();
    return Model(spec, std::move(impl), m, std::move(fingerprint));
}

std::vector<double> forest_importances(const LearnerSpec& spec, const Dataset& train) {
    if (spec.algorithm != Algorithm::random_forest) throw Error("forest_importances: spec is not a random_forest");
    validate(spec);
    require_both_classes(train, "forest_importances");
    const auto trees = grow_forest(spec, train);
    std::vector<double> out(train.num_features(), 0.0);
    for (const auto& t : trees) {
        const auto& imp = t.impurity_decrease();
        const double total = std::accumulate(imp.begin(), imp.end(), 0.0);
        if (total <= 0.0) continue;
        for (Index j = 0; j < out.size(); ++j) out[j] += imp[j] / total;
    }
    for (double& v : out) v /= static_cast<double>(trees.size());
    return out;
}

} // namespace hardscope
