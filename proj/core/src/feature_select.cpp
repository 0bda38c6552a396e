#include "hardscope/feature_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hardscope/learners.hpp"
#include "hardscope/linear.hpp"
#include "hardscope/stats.hpp"

namespace hardscope {

std::string_view to_string(FeatureSelectMethod method) {
    switch (method) {
    case FeatureSelectMethod::cfs: return "cfs";
    case FeatureSelectMethod::skb_anova: return "skb_anova";
    case FeatureSelectMethod::skb_mutual: return "skb_mutual";
    case FeatureSelectMethod::linsvm_importance: return "linsvm_importance";
    case FeatureSelectMethod::tree_importance: return "tree_importance";
    case FeatureSelectMethod::none: return "none";
    }
    return "none";
}

FeatureSelectMethod parse_feature_select_method(std::string_view text) {
    for (auto m : {FeatureSelectMethod::cfs, FeatureSelectMethod::skb_anova, FeatureSelectMethod::skb_mutual,
                   FeatureSelectMethod::linsvm_importance, FeatureSelectMethod::tree_importance,
                   FeatureSelectMethod::none}) {
        if (text == to_string(m)) return m;
    }
    if (text == "linsvm") return FeatureSelectMethod::linsvm_importance;
    if (text == "tree") return FeatureSelectMethod::tree_importance;
    throw Error("unknown feature selector '" + std::string(text) + "'");
}

FeatureSelectSpec parse_feature_select_spec(std::string_view text) {
    const OptionString parsed = parse_option_string(text);
    FeatureSelectSpec spec;
    spec.method = parse_feature_select_method(parsed.name);
    for (const auto& [key, value] : parsed.options) {
        try {
            if (key == "k") {
                const long long k = std::stoll(value);
                if (k < 1) throw Error("k must be >= 1");
                spec.k = static_cast<Index>(k);
            } else if (key == "seed") {
                spec.seed = std::stoull(value);
            } else {
                throw Error("unknown option");
            }
        } catch (const std::logic_error&) {
            throw Error("feature-select spec: bad value for '" + key + "': " + value);
        } catch (const Error& e) {
            throw Error("feature-select spec: option '" + key + "': " + e.what());
        }
    }
    return spec;
}

std::string to_string(const FeatureSelectSpec& spec) {
    std::ostringstream out;
    out << to_string(spec.method);
    if (spec.k > 0) out << ":k=" << spec.k << ",seed=" << spec.seed;
    else out << ":seed=" << spec.seed;
    return out.str();
}

namespace {

bool constant_column(const Matrix& x, Index j) {
    for (Index i = 1; i < x.rows(); ++i) {
        if (x(i, j) != x(0, j)) return false;
    }
    return true;
}

std::vector<double> label_values(const Dataset& data) {
    return {data.labels().begin(), data.labels().end()};
}

} // namespace

std::vector<double> anova_f_scores(const Dataset& data) {
    require_both_classes(data, "skb_anova");
    const Index n = data.size();
    const auto counts = data.class_counts();
    std::vector<double> out(data.num_features(), 0.0);
    for (Index j = 0; j < data.num_features(); ++j) {
        double sum[2] = {0.0, 0.0};
        for (Index i = 0; i < n; ++i) sum[data.label(i)] += data.features()(i, j);
        const double mean_c[2] = {sum[0] / static_cast<double>(counts[0]), sum[1] / static_cast<double>(counts[1])};
        const double mean = (sum[0] + sum[1]) / static_cast<double>(n);
        double ssw = 0.0;
        for (Index i = 0; i < n; ++i) {
            const double dv = data.features()(i, j) - mean_c[data.label(i)];
            ssw += dv * dv;
        }
        double ssb = 0.0;
        for (int c = 0; c < 2; ++c) {
            ssb += static_cast<double>(counts[c]) * (mean_c[c] - mean) * (mean_c[c] - mean);
        }
        if (ssw <= 0.0) {
            out[j] = ssb > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        } else {
            out[j] = ssb / (ssw / static_cast<double>(n - 2));
        }
    }
    return out;
}

std::vector<double> mutual_information_scores(const Dataset& data, Index bins) {
    require_both_classes(data, "skb_mutual");
    if (bins < 1) throw Error("skb_mutual: bins must be >= 1");
    const Index n = data.size();
    const auto nd = static_cast<double>(n);
    const auto counts = data.class_counts();
    std::vector<double> out(data.num_features(), 0.0);
    for (Index j = 0; j < data.num_features(); ++j) {
        const auto col = data.features().column(j);
        const auto ranks = midranks(col);
        std::vector<double> joint(bins * 2, 0.0);
        std::vector<double> marginal(bins, 0.0);
        for (Index i = 0; i < n; ++i) {
            auto b = static_cast<Index>(std::floor((ranks[i] - 1.0) * static_cast<double>(bins) / nd));
            b = std::min(b, bins - 1);
            joint[b * 2 + static_cast<Index>(data.label(i))] += 1.0;
            marginal[b] += 1.0;
        }
        double mi = 0.0;
        for (Index b = 0; b < bins; ++b) {
            for (int c = 0; c < 2; ++c) {
                const double pj = joint[b * 2 + static_cast<Index>(c)] / nd;
                if (pj <= 0.0) continue;
                mi += pj * std::log(pj / ((marginal[b] / nd) * (static_cast<double>(counts[c]) / nd)));
            }
        }
        out[j] = std::max(0.0, mi);
    }
    return out;
}

std::vector<double> linsvm_scores(const Dataset& data) {
    require_both_classes(data, "linsvm_importance");
    const LearnerSpec defaults = make_spec(Algorithm::linear_svm);
    LinearOptions options;
    options.loss = LinearLoss::hinge;
    options.c = defaults.get_double("C", 90.0);
    options.epochs = static_cast<Index>(defaults.get_int("epochs", 200));
    const LinearModel model = LinearModel::fit(data.features(), data.labels(), options);
    std::vector<double> out(model.weights().size());
    std::transform(model.weights().begin(), model.weights().end(), out.begin(), [](double w) { return std::abs(w); });
    return out;
}

std::vector<double> tree_scores(const Dataset& data, std::uint64_t seed) {
    return forest_importances(make_spec(Algorithm::random_forest, seed), data);
}

IndexList rank_features(const Dataset& data, const std::vector<double>& scores) {
    IndexList order(scores.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::vector<bool> constant(scores.size());
    for (Index j = 0; j < scores.size(); ++j) constant[j] = constant_column(data.features(), j);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (constant[a] != constant[b]) return !constant[a];
        return scores[a] > scores[b];
    });
    return order;
}

double cfs_merit(const IndexList& subset, const std::vector<double>& class_corr,
                 const std::vector<std::vector<double>>& feature_corr) {
    if (subset.empty()) return 0.0;
    const auto k = static_cast<double>(subset.size());
    double rcf = 0.0;
    for (Index f : subset) rcf += class_corr[f];
    rcf /= k;
    double rff = 0.0;
    Index pairs = 0;
    for (Index a = 0; a < subset.size(); ++a) {
        for (Index b = a + 1; b < subset.size(); ++b) {
            rff += feature_corr[subset[a]][subset[b]];
            ++pairs;
        }
    }
    if (pairs > 0) rff /= static_cast<double>(pairs);
    const double denom = std::sqrt(k + k * (k - 1.0) * rff);
    return denom > 0.0 ? k * rcf / denom : 0.0;
}

namespace {

struct CfsTables {
    std::vector<double> class_corr;
    std::vector<std::vector<double>> feature_corr;
};

CfsTables cfs_tables(const Dataset& data) {
    const Index m = data.num_features();
    std::vector<std::vector<double>> ranks(m);
    for (Index j = 0; j < m; ++j) ranks[j] = midranks(data.features().column(j));
    const auto label_ranks = midranks(label_values(data));
    CfsTables t;
    t.class_corr.resize(m);
    t.feature_corr.assign(m, std::vector<double>(m, 1.0));
    for (Index a = 0; a < m; ++a) {
        t.class_corr[a] = std::abs(pearson(ranks[a], label_ranks));
        for (Index b = a + 1; b < m; ++b) {
            const double r = std::abs(pearson(ranks[a], ranks[b]));
            t.feature_corr[a][b] = r;
            t.feature_corr[b][a] = r;
        }
    }
    return t;
}

} // namespace

IndexList cfs_select(const Dataset& data) {
    require_both_classes(data, "cfs");
    const CfsTables t = cfs_tables(data);
    const Index m = data.num_features();
    IndexList chosen;
    std::vector<bool> used(m, false);
    double current = -1.0;
    while (chosen.size() < m) {
        double best = -1.0;
        Index best_f = m;
        for (Index f = 0; f < m; ++f) {
            if (used[f]) continue;
            IndexList trial = chosen;
            trial.push_back(f);
            const double merit = cfs_merit(trial, t.class_corr, t.feature_corr);
            if (merit > best) {
                best = merit;
                best_f = f;
            }
        }
        if (best_f == m) break;
        if (!chosen.empty() && !(best > current)) break;
        chosen.push_back(best_f);
        used[best_f] = true;
        current = best;
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

FeatureSelection select_features(const Dataset& train, const FeatureSelectSpec& spec) {
    const Index m = train.num_features();
    IndexList all(m);
    std::iota(all.begin(), all.end(), Index{0});
    if (spec.method == FeatureSelectMethod::none) {
        return FeatureSelection(train, all, std::vector<double>(m, 0.0));
    }
    require_both_classes(train, "select_features");
    if (spec.k > m) {
        throw Error("select_features: k = " + std::to_string(spec.k) + " exceeds the " + std::to_string(m) +
                    " available features");
    }
    Index constants = 0;
    for (Index j = 0; j < m; ++j) constants += constant_column(train.features(), j) ? 1 : 0;

    std::vector<double> scores;
    IndexList kept;
    if (spec.method == FeatureSelectMethod::cfs) {
        scores = cfs_tables(train).class_corr;
        kept = cfs_select(train);
    } else {
        switch (spec.method) {
        case FeatureSelectMethod::skb_anova: scores = anova_f_scores(train); break;
        case FeatureSelectMethod::skb_mutual: scores = mutual_information_scores(train); break;
        case FeatureSelectMethod::linsvm_importance: scores = linsvm_scores(train); break;
        case FeatureSelectMethod::tree_importance: scores = tree_scores(train, spec.seed); break;
        default: break;
        }
        const Index k = spec.k > 0 ? spec.k : std::max<Index>(1, (m + 1) / 2);
        IndexList order = rank_features(train, scores);
        kept.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(kept.begin(), kept.end());
    }
    FeatureSelection out(train.select_features(kept), kept, scores);
    if (constants > 0) {
        out.warning = true;
        out.message = std::to_string(constants) + " constant feature(s) ranked last";
    }
    return out;
}

} // namespace hardscope
