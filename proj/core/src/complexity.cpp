#include "hardscope/complexity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "hardscope/learners.hpp"
#include "hardscope/linear.hpp"
#include "hardscope/normalize.hpp"
#include "hardscope/rng.hpp"

namespace hardscope {

std::string_view to_string(ComplexityMeasure measure) {
    switch (measure) {
    case ComplexityMeasure::F1: return "F1";
    case ComplexityMeasure::F1v: return "F1v";
    case ComplexityMeasure::F2: return "F2";
    case ComplexityMeasure::F3: return "F3";
    case ComplexityMeasure::F4: return "F4";
    case ComplexityMeasure::L1: return "L1";
    case ComplexityMeasure::L2: return "L2";
    case ComplexityMeasure::L3: return "L3";
    case ComplexityMeasure::N1: return "N1";
    case ComplexityMeasure::N2: return "N2";
    case ComplexityMeasure::N3: return "N3";
    case ComplexityMeasure::N4: return "N4";
    case ComplexityMeasure::T1: return "T1";
    case ComplexityMeasure::LSC: return "LSC";
    case ComplexityMeasure::Density: return "Density";
    case ComplexityMeasure::ClsCoef: return "ClsCoef";
    case ComplexityMeasure::Hubs: return "Hubs";
    case ComplexityMeasure::T2: return "T2";
    case ComplexityMeasure::T3: return "T3";
    case ComplexityMeasure::T4: return "T4";
    case ComplexityMeasure::C1: return "C1";
    case ComplexityMeasure::C2: return "C2";
    }
    return "F1";
}

ComplexityMeasure parse_complexity_measure(std::string_view text) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return out;
    };
    for (ComplexityMeasure m : all_complexity_measures) {
        if (lower(text) == lower(to_string(m))) return m;
    }
    throw Error("unknown complexity measure '" + std::string(text) + "'");
}

std::string_view family_of(ComplexityMeasure measure) {
    const auto i = static_cast<int>(measure);
    if (i <= static_cast<int>(ComplexityMeasure::F4)) return "feature";
    if (i <= static_cast<int>(ComplexityMeasure::L3)) return "linearity";
    if (i <= static_cast<int>(ComplexityMeasure::LSC)) return "neighborhood";
    if (i <= static_cast<int>(ComplexityMeasure::Hubs)) return "network";
    if (i <= static_cast<int>(ComplexityMeasure::T4)) return "dimensionality";
    return "balance";
}

double ComplexityProfile::at(ComplexityMeasure m) const {
    const auto& v = (*this)[m];
    if (!v) throw Error("complexity measure " + std::string(to_string(m)) + " was not computed");
    return *v;
}

std::pair<double, double> complexity_bounds(ComplexityMeasure measure, Index n, Index m) {
    switch (measure) {
    case ComplexityMeasure::LSC: return {0.0, 1.0 - 1.0 / static_cast<double>(n)};
    case ComplexityMeasure::T2:
    case ComplexityMeasure::T3: return {0.0, static_cast<double>(m)};
    default: return {0.0, 1.0};
    }
}

double discriminant_ratio(std::span<const double> values, std::span<const Label> labels) {
    double sum[2] = {0.0, 0.0};
    double count[2] = {0.0, 0.0};
    double total = 0.0;
    for (Index i = 0; i < values.size(); ++i) {
        sum[labels[i]] += values[i];
        count[labels[i]] += 1.0;
        total += values[i];
    }
    const double mu = total / static_cast<double>(values.size());
    double between = 0.0;
    double mu_c[2] = {0.0, 0.0};
    for (int c = 0; c < 2; ++c) {
        if (count[c] == 0.0) continue;
        mu_c[c] = sum[c] / count[c];
        between += count[c] * (mu_c[c] - mu) * (mu_c[c] - mu);
    }
    double within = 0.0;
    for (Index i = 0; i < values.size(); ++i) {
        const double d = values[i] - mu_c[labels[i]];
        within += d * d;
    }
    if (within == 0.0) return between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return between / within;
}

namespace {

struct ClassRanges {
    std::vector<double> lo[2];
    std::vector<double> hi[2];
};

ClassRanges class_ranges(const Dataset& data, const IndexList& rows) {
    const Index m = data.num_features();
    ClassRanges r;
    for (int c = 0; c < 2; ++c) {
        r.lo[c].assign(m, std::numeric_limits<double>::infinity());
        r.hi[c].assign(m, -std::numeric_limits<double>::infinity());
    }
    for (Index i : rows) {
        const Label c = data.label(i);
        for (Index f = 0; f < m; ++f) {
            r.lo[c][f] = std::min(r.lo[c][f], data.features()(i, f));
            r.hi[c][f] = std::max(r.hi[c][f], data.features()(i, f));
        }
    }
    return r;
}

IndexList all_rows(Index n) {
    IndexList out(n);
    std::iota(out.begin(), out.end(), Index{0});
    return out;
}

double ratio_to_unit(double s) {
    if (std::isinf(s)) return 1.0;
    return s / (1.0 + s);
}

double f1_from_ratio(double r) { return std::isinf(r) ? 0.0 : 1.0 / (1.0 + r); }

} // namespace

void feature_measures(const Dataset& data, ComplexityProfile& out) {
    require_both_classes(data, "feature measures");
    const Index n = data.size();
    const Index m = data.num_features();
    const auto& y = data.labels();

    double best = 0.0;
    for (Index f = 0; f < m; ++f) best = std::max(best, discriminant_ratio(data.features().column(f), y));
    out[ComplexityMeasure::F1] = f1_from_ratio(best);

    // Fisher direction with a small ridge on the within-class scatter.
    {
        Eigen::VectorXd mu[2] = {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m)),
                                 Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m))};
        const auto counts = data.class_counts();
        for (Index i = 0; i < n; ++i) {
            for (Index f = 0; f < m; ++f) mu[data.label(i)](static_cast<Eigen::Index>(f)) += data.features()(i, f);
        }
        for (int c = 0; c < 2; ++c) mu[c] /= static_cast<double>(counts[c]);
        Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (Index i = 0; i < n; ++i) {
            Eigen::VectorXd dv(static_cast<Eigen::Index>(m));
            for (Index f = 0; f < m; ++f) {
                dv(static_cast<Eigen::Index>(f)) = data.features()(i, f) - mu[data.label(i)](static_cast<Eigen::Index>(f));
            }
            scatter.noalias() += dv * dv.transpose();
        }
        scatter += 1e-6 * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        const Eigen::VectorXd w = scatter.ldlt().solve(mu[1] - mu[0]);
        std::vector<double> projected(n);
        for (Index i = 0; i < n; ++i) {
            double s = 0.0;
            for (Index f = 0; f < m; ++f) s += w(static_cast<Eigen::Index>(f)) * data.features()(i, f);
            projected[i] = s;
        }
        out[ComplexityMeasure::F1v] = f1_from_ratio(discriminant_ratio(projected, y));
    }

    const IndexList rows = all_rows(n);
    const ClassRanges r = class_ranges(data, rows);
    double f2 = 1.0;
    Index min_overlap = n;
    for (Index f = 0; f < m; ++f) {
        const double overlap =
            std::max(0.0, std::min(r.hi[0][f], r.hi[1][f]) - std::max(r.lo[0][f], r.lo[1][f]));
        const double range = std::max(r.hi[0][f], r.hi[1][f]) - std::min(r.lo[0][f], r.lo[1][f]);
        f2 *= range > 0.0 ? overlap / range : 1.0;

        const double lo = std::max(r.lo[0][f], r.lo[1][f]);
        const double hi = std::min(r.hi[0][f], r.hi[1][f]);
        Index inside = 0;
        for (Index i = 0; i < n; ++i) {
            const double v = data.features()(i, f);
            if (v >= lo && v <= hi) ++inside;
        }
        min_overlap = std::min(min_overlap, inside);
    }
    out[ComplexityMeasure::F2] = f2;
    out[ComplexityMeasure::F3] = static_cast<double>(min_overlap) / static_cast<double>(n);

    // F4: repeatedly apply the most efficient unused feature to the
    // instances it has not yet separated.
    IndexList remaining = rows;
    std::vector<bool> used(m, false);
    for (Index step = 0; step < m && !remaining.empty(); ++step) {
        const ClassRanges rr = class_ranges(data, remaining);
        Index best_f = m;
        IndexList best_keep;
        for (Index f = 0; f < m; ++f) {
            if (used[f]) continue;
            const double lo = std::max(rr.lo[0][f], rr.lo[1][f]);
            const double hi = std::min(rr.hi[0][f], rr.hi[1][f]);
            IndexList keep;
            for (Index i : remaining) {
                const double v = data.features()(i, f);
                if (v >= lo && v <= hi) keep.push_back(i);
            }
            if (best_f == m || keep.size() < best_keep.size()) {
                best_f = f;
                best_keep = std::move(keep);
            }
        }
        used[best_f] = true;
        remaining = std::move(best_keep);
    }
    out[ComplexityMeasure::F4] = static_cast<double>(remaining.size()) / static_cast<double>(n);
}

Dataset interpolated_points(const Dataset& data, std::uint64_t seed) {
    std::vector<IndexList> groups;
    for (Label c : {0, 1}) {
        IndexList members = data.indices_of(c);
        if (!members.empty()) groups.push_back(std::move(members));
    }
    std::sort(groups.begin(), groups.end(), [](const IndexList& a, const IndexList& b) { return a.front() < b.front(); });
    Matrix x;
    std::vector<Label> y;
    for (const IndexList& members : groups) {
        Rng rng(derive_seed(seed, 0x13, members.front()));
        const Label c = data.label(members.front());
        std::vector<double> point(data.num_features());
        for (Index s = 0; s < members.size(); ++s) {
            const Index a = members[rng.uniform_index(members.size())];
            const Index b = members[rng.uniform_index(members.size())];
            for (Index f = 0; f < point.size(); ++f) {
                point[f] = 0.5 * (data.features()(a, f) + data.features()(b, f));
            }
            x.append_row(point);
            y.push_back(c);
        }
    }
    return Dataset(std::move(x), std::move(y), data.feature_names(), data.id());
}

void linearity_measures(const Dataset& data, std::uint64_t seed, ComplexityProfile& out) {
    require_both_classes(data, "linearity measures");
    const LearnerSpec defaults = make_spec(Algorithm::linear_svm);
    LinearOptions options;
    options.loss = LinearLoss::hinge;
    options.c = defaults.get_double("C", 90.0);
    options.epochs = static_cast<Index>(defaults.get_int("epochs", 200));
    const LinearModel model = LinearModel::fit(data.features(), data.labels(), options);
    const Index n = data.size();
    double dist = 0.0;
    Index errors = 0;
    for (Index i = 0; i < n; ++i) {
        if (model.predict(data.row(i)) != data.label(i)) {
            ++errors;
            dist += model.distance(data.row(i));
        }
    }
    out[ComplexityMeasure::L1] = ratio_to_unit(dist / static_cast<double>(n));
    out[ComplexityMeasure::L2] = static_cast<double>(errors) / static_cast<double>(n);
    const Dataset synth = interpolated_points(data, seed);
    Index synth_errors = 0;
    for (Index i = 0; i < synth.size(); ++i) {
        if (model.predict(synth.row(i)) != synth.label(i)) ++synth_errors;
    }
    out[ComplexityMeasure::L3] = static_cast<double>(synth_errors) / static_cast<double>(synth.size());
}

void neighborhood_dataset_measures(const MeasureContext& ctx, std::uint64_t seed, ComplexityProfile& out) {
    const Dataset& data = ctx.data();
    const Index n = data.size();
    const DistanceMatrix& d = ctx.distances();

    std::vector<bool> border(n, false);
    for (const MstEdge& e : ctx.mst()) {
        if (data.label(e.a) != data.label(e.b)) border[e.a] = border[e.b] = true;
    }
    out[ComplexityMeasure::N1] =
        static_cast<double>(std::count(border.begin(), border.end(), true)) / static_cast<double>(n);

    double intra = 0.0;
    double extra = 0.0;
    for (Index i = 0; i < n; ++i) {
        if (auto f = ctx.nearest_friend(i)) intra += d(i, *f);
        extra += ctx.enemy_distance(i);
    }
    double n2 = 0.5;
    if (extra > 0.0) n2 = ratio_to_unit(intra / extra);
    else if (intra > 0.0) n2 = 1.0;
    out[ComplexityMeasure::N2] = n2;

    const IndexList everyone = all_rows(n);
    Index loo_errors = 0;
    for (Index i = 0; i < n; ++i) {
        if (data.label(nearest_among(d, i, everyone, 1).front()) != data.label(i)) ++loo_errors;
    }
    out[ComplexityMeasure::N3] = static_cast<double>(loo_errors) / static_cast<double>(n);

    const Dataset synth = interpolated_points(data, seed);
    Index nn_errors = 0;
    for (Index s = 0; s < synth.size(); ++s) {
        Index best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < n; ++i) {
            const double v = euclidean(synth.row(s), data.row(i));
            if (v < best_d) {
                best_d = v;
                best = i;
            }
        }
        if (data.label(best) != synth.label(s)) ++nn_errors;
    }
    out[ComplexityMeasure::N4] = static_cast<double>(nn_errors) / static_cast<double>(synth.size());

    // T1: spheres reaching each instance's nearest enemy; drop every sphere
    // inside another one (identical spheres keep the lowest index).
    Index kept = 0;
    for (Index i = 0; i < n; ++i) {
        const double ri = ctx.enemy_distance(i);
        bool absorbed = false;
        for (Index j = 0; j < n && !absorbed; ++j) {
            if (j == i) continue;
            const double rj = ctx.enemy_distance(j);
            if (d(i, j) + ri <= rj) {
                const bool identical = d(i, j) == 0.0 && ri == rj;
                absorbed = !identical || j < i;
            }
        }
        if (!absorbed) ++kept;
    }
    out[ComplexityMeasure::T1] = static_cast<double>(kept) / static_cast<double>(n);

    // Local sets here count the instance itself.
    double ls_total = 0.0;
    for (Index i = 0; i < n; ++i) ls_total += static_cast<double>(ctx.local_set(i).size() + 1);
    out[ComplexityMeasure::LSC] = 1.0 - ls_total / (static_cast<double>(n) * static_cast<double>(n));
}

std::vector<std::pair<Index, Index>> epsilon_graph(const DistanceMatrix& d, const std::vector<Label>& labels,
                                                   double epsilon) {
    const double cut = epsilon * d.max();
    std::vector<std::pair<Index, Index>> edges;
    for (Index i = 0; i < d.size(); ++i) {
        for (Index j = i + 1; j < d.size(); ++j) {
            if (labels[i] == labels[j] && d(i, j) < cut) edges.emplace_back(i, j);
        }
    }
    return edges;
}

void network_measures(const Dataset& data, ComplexityProfile& out) {
    const Index n = data.size();
    if (n < 3) throw Error("network measures: need at least 3 instances");
    const DistanceMatrix d(data.features());
    const auto edges = epsilon_graph(d, data.labels());
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::vector<IndexList> nb(n);
    for (auto [a, b] : edges) {
        adj[a][b] = adj[b][a] = true;
        nb[a].push_back(b);
        nb[b].push_back(a);
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    out[ComplexityMeasure::Density] = 1.0 - static_cast<double>(edges.size()) / pairs;

    double cc_sum = 0.0;
    Index cc_count = 0;
    for (Index v = 0; v < n; ++v) {
        const Index k = nb[v].size();
        if (k < 2) continue;
        Index links = 0;
        for (Index a = 0; a < k; ++a) {
            for (Index b = a + 1; b < k; ++b) links += adj[nb[v][a]][nb[v][b]] ? 1 : 0;
        }
        cc_sum += static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
        ++cc_count;
    }
    out[ComplexityMeasure::ClsCoef] = cc_count > 0 ? 1.0 - cc_sum / static_cast<double>(cc_count) : 1.0;

    std::vector<double> hub(n, 0.0);
    for (Index v = 0; v < n; ++v) {
        for (Index u : nb[v]) hub[v] += static_cast<double>(nb[u].size());
    }
    const double top = *std::max_element(hub.begin(), hub.end());
    if (top > 0.0) {
        double mean = 0.0;
        for (double h : hub) mean += h / top;
        out[ComplexityMeasure::Hubs] = 1.0 - mean / static_cast<double>(n);
    } else {
        out[ComplexityMeasure::Hubs] = 1.0;
    }
}

Index pca_components(const Dataset& data, double threshold) {
    const Dataset z = standardize(data);
    const Index n = z.size();
    const auto m = static_cast<Eigen::Index>(z.num_features());
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), m);
    for (Index i = 0; i < n; ++i) {
        for (Eigen::Index f = 0; f < m; ++f) x(static_cast<Eigen::Index>(i), f) = z.features()(i, static_cast<Index>(f));
    }
    const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov, Eigen::EigenvaluesOnly);
    std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
    for (double& e : eig) e = std::max(0.0, e);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    const double total = std::accumulate(eig.begin(), eig.end(), 0.0);
    if (total <= 0.0) return 1;
    double cum = 0.0;
    for (Index k = 0; k < eig.size(); ++k) {
        cum += eig[k];
        if (cum / total >= threshold - 1e-12) return k + 1;
    }
    return eig.size();
}

void dimensionality_measures(const Dataset& data, ComplexityProfile& out) {
    const auto n = static_cast<double>(data.size());
    const auto m = static_cast<double>(data.num_features());
    const auto mp = static_cast<double>(pca_components(data));
    out[ComplexityMeasure::T2] = m / n;
    out[ComplexityMeasure::T3] = mp / n;
    out[ComplexityMeasure::T4] = mp / m;
}

void balance_dataset_measures(const Dataset& data, ComplexityProfile& out) {
    const auto counts = data.class_counts();
    if (counts[0] == 0 || counts[1] == 0) {
        out[ComplexityMeasure::C1] = 1.0;
        out[ComplexityMeasure::C2] = 1.0;
        out.single_class = true;
        return;
    }
    const auto n = static_cast<double>(data.size());
    double c1 = 1.0;
    for (Index c : counts) {
        const double p = static_cast<double>(c) / n;
        c1 += p * std::log2(p);
    }
    out[ComplexityMeasure::C1] = std::max(0.0, c1);
    const auto n0 = static_cast<double>(counts[0]);
    const auto n1 = static_cast<double>(counts[1]);
    const double ir = 0.5 * (n0 / n1 + n1 / n0);
    out[ComplexityMeasure::C2] = 1.0 - 1.0 / ir;
}

ComplexityProfile complexity_profile(const Dataset& data, const MeasureOptions& options) {
    ComplexityProfile out;
    balance_dataset_measures(data, out);
    const Dataset space = measure_space(data, options);
    if (out.single_class) {
        // class-free measures only; the rest stay unset
        dimensionality_measures(space, out);
        return out;
    }
    feature_measures(space, out);
    linearity_measures(space, options.seed, out);
    neighborhood_dataset_measures(MeasureContext(space, options.k), options.seed, out);
    network_measures(space, out);
    dimensionality_measures(space, out);
    return out;
}

double f1_measure(const Dataset& data) {
    ComplexityProfile p;
    feature_measures(data, p);
    return p.at(ComplexityMeasure::F1);
}

double n2_measure(const Dataset& data) {
    ComplexityProfile p;
    neighborhood_dataset_measures(MeasureContext(data, 1), 0, p);
    return p.at(ComplexityMeasure::N2);
}

} // namespace hardscope
