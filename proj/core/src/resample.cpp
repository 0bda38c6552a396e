#include "hardscope/resample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardscope/distance.hpp"
#include "hardscope/rng.hpp"

namespace hardscope {

std::string_view to_string(ResampleMethod method) {
    switch (method) {
    case ResampleMethod::smote: return "smote";
    case ResampleMethod::border_smote: return "border_smote";
    case ResampleMethod::rus: return "rus";
    case ResampleMethod::smote_tomek: return "smote_tomek";
    case ResampleMethod::smote_enn: return "smote_enn";
    }
    return "smote";
}

ResampleMethod parse_resample_method(std::string_view text) {
    for (auto m : {ResampleMethod::smote, ResampleMethod::border_smote, ResampleMethod::rus,
                   ResampleMethod::smote_tomek, ResampleMethod::smote_enn}) {
        if (text == to_string(m)) return m;
    }
    if (text == "borderline_smote" || text == "bsmote") return ResampleMethod::border_smote;
    throw Error("unknown resampler '" + std::string(text) + "'");
}

ResampleSpec parse_resample_spec(std::string_view text) {
    const OptionString parsed = parse_option_string(text);
    ResampleSpec spec;
    spec.method = parse_resample_method(parsed.name);
    for (const auto& [key, value] : parsed.options) {
        try {
            if (key == "k") {
                const long long k = std::stoll(value);
                if (k < 1) throw Error("k must be >= 1");
                spec.k = static_cast<Index>(k);
            } else if (key == "seed") {
                spec.seed = std::stoull(value);
            } else if (key == "ratio") {
                spec.ratio = std::stod(value);
                if (!(spec.ratio > 0.0 && spec.ratio <= 1.0)) throw Error("ratio must be in (0, 1]");
            } else {
                throw Error("unknown option");
            }
        } catch (const std::logic_error&) {
            throw Error("resample spec: bad value for '" + key + "': " + value);
        } catch (const Error& e) {
            throw Error("resample spec: option '" + key + "': " + e.what());
        }
    }
    return spec;
}

std::string to_string(const ResampleSpec& spec) {
    std::ostringstream out;
    out << to_string(spec.method) << ":k=" << spec.k << ",seed=" << spec.seed << ",ratio=" << spec.ratio;
    return out.str();
}

namespace {

struct Counts {
    Label minority;
    Index n_min;
    Index n_maj;
};

Counts counts_of(const Dataset& data) {
    const auto c = data.class_counts();
    const Label minority = data.minority_label();
    return {minority, c[minority], c[1 - minority]};
}

Index oversample_target(const Counts& c, double ratio) {
    const auto target = static_cast<Index>(std::llround(ratio * static_cast<double>(c.n_maj)));
    return target > c.n_min ? target - c.n_min : 0;
}

Dataset append_rows(const Dataset& base, const Matrix& extra, Label label) {
    if (extra.empty()) return base;
    Matrix x = base.features();
    std::vector<Label> y = base.labels();
    for (Index r = 0; r < extra.rows(); ++r) {
        x.append_row(extra.row(r));
        y.push_back(label);
    }
    return Dataset(std::move(x), std::move(y), base.feature_names(), base.id());
}

/// Interpolates `count` synthetic points. Base points are drawn uniformly from
/// `bases` (positions into `minority`), neighbours uniformly among the k
/// nearest minority neighbours of the base.
Matrix interpolate(const Dataset& data, const IndexList& minority, const IndexList& bases, Index k,
                   Index count, Rng& rng) {
    const Matrix pts = data.features().select_rows(minority);
    const DistanceMatrix d(pts);
    IndexList all(minority.size());
    for (Index i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<IndexList> neighbours(minority.size());
    for (Index b : bases) {
        if (neighbours[b].empty()) neighbours[b] = nearest_among(d, b, all, k);
    }
    Matrix out(count, data.num_features());
    for (Index s = 0; s < count; ++s) {
        const Index base = bases[rng.uniform_index(bases.size())];
        const IndexList& nb = neighbours[base];
        const Index z = nb[rng.uniform_index(nb.size())];
        const double delta = rng.uniform01();
        for (Index j = 0; j < data.num_features(); ++j) {
            const double xv = pts(base, j);
            out(s, j) = xv + delta * (pts(z, j) - xv);
        }
    }
    return out;
}

void check_smote_input(const Counts& c, std::string_view op) {
    if (c.n_min < 2) {
        throw Error(std::string(op) + ": minority class has a single instance; cannot interpolate");
    }
}

ResampleResult run_smote(const Dataset& train, const ResampleSpec& spec) {
    const Counts c = counts_of(train);
    const Index need = oversample_target(c, spec.ratio);
    if (need == 0) return ResampleResult(train);
    check_smote_input(c, "smote");
    const IndexList minority = train.indices_of(c.minority);
    IndexList bases(minority.size());
    for (Index i = 0; i < bases.size(); ++i) bases[i] = i;
    Rng rng(spec.seed);
    const Index k = std::min(spec.k, c.n_min - 1);
    Matrix extra = interpolate(train, minority, bases, k, need, rng);
    return ResampleResult(append_rows(train, extra, c.minority), need);
}

constexpr Index border_m = 10;

ResampleResult run_border_smote(const Dataset& train, const ResampleSpec& spec) {
    const Counts c = counts_of(train);
    const Index need = oversample_target(c, spec.ratio);
    if (need == 0) return ResampleResult(train);
    check_smote_input(c, "border_smote");
    const IndexList minority = train.indices_of(c.minority);
    const DistanceMatrix d = distance_matrix(train);
    IndexList everyone(train.size());
    for (Index i = 0; i < everyone.size(); ++i) everyone[i] = i;
    const Index m = std::min(border_m, train.size() - 1);
    IndexList danger;
    for (Index pos = 0; pos < minority.size(); ++pos) {
        const IndexList nb = nearest_among(d, minority[pos], everyone, m);
        const auto enemies = static_cast<Index>(
            std::count_if(nb.begin(), nb.end(), [&](Index z) { return train.label(z) != c.minority; }));
        if (2 * enemies >= nb.size() && enemies < nb.size()) danger.push_back(pos);
    }
    if (danger.empty()) {
        ResampleResult out = run_smote(train, spec);
        out.warning = true;
        out.message = "border_smote: no minority instance in danger; fell back to smote";
        return out;
    }
    Rng rng(spec.seed);
    const Index k = std::min(spec.k, c.n_min - 1);
    Matrix extra = interpolate(train, minority, danger, k, need, rng);
    return ResampleResult(append_rows(train, extra, c.minority), need);
}

ResampleResult run_rus(const Dataset& train, const ResampleSpec& spec) {
    const Counts c = counts_of(train);
    const auto keep =
        std::max<Index>(1, static_cast<Index>(std::llround(static_cast<double>(c.n_min) / spec.ratio)));
    if (keep >= c.n_maj) return ResampleResult(train);
    const IndexList majority = train.indices_of(1 - c.minority);
    Rng rng(spec.seed);
    const IndexList chosen = rng.sample_without_replacement(c.n_maj, keep);
    std::vector<bool> kept(train.size(), true);
    for (Index i : majority) kept[i] = false;
    for (Index p : chosen) kept[majority[p]] = true;
    IndexList rows;
    for (Index i = 0; i < train.size(); ++i) {
        if (kept[i]) rows.push_back(i);
    }
    return ResampleResult(train.subset(rows), 0, c.n_maj - keep);
}

ResampleResult drop_rows(const ResampleResult& balanced, const std::vector<bool>& remove, std::string_view op) {
    const Dataset& data = balanced.data;
    IndexList rows;
    for (Index i = 0; i < data.size(); ++i) {
        if (!remove[i]) rows.push_back(i);
    }
    if (rows.size() == data.size()) return balanced;
    std::array<Index, 2> left{0, 0};
    for (Index i : rows) ++left[data.label(i)];
    if (rows.size() < 2 || left[0] == 0 || left[1] == 0) {
        ResampleResult out = balanced;
        out.warning = true;
        out.message = std::string(op) + ": cleaning would remove a whole class; returning the balanced set";
        return out;
    }
    // Synthetic rows sit after the originals, so counting survivors past the
    // original size keeps `synthetic` accurate.
    const Index originals = data.size() - balanced.synthetic;
    const auto synthetic_left =
        static_cast<Index>(std::count_if(rows.begin(), rows.end(), [&](Index i) { return i >= originals; }));
    ResampleResult out(data.subset(rows), synthetic_left, data.size() - rows.size());
    out.warning = balanced.warning;
    out.message = balanced.message;
    return out;
}

} // namespace

std::vector<std::pair<Index, Index>> tomek_links(const Dataset& data) {
    const DistanceMatrix d = distance_matrix(data);
    IndexList everyone(data.size());
    for (Index i = 0; i < everyone.size(); ++i) everyone[i] = i;
    IndexList nn(data.size());
    for (Index i = 0; i < data.size(); ++i) nn[i] = nearest_among(d, i, everyone, 1).front();
    std::vector<std::pair<Index, Index>> links;
    for (Index i = 0; i < data.size(); ++i) {
        const Index j = nn[i];
        if (i < j && nn[j] == i && data.label(i) != data.label(j)) links.emplace_back(i, j);
    }
    return links;
}

IndexList enn_misclassified(const Dataset& data, Index k) {
    const DistanceMatrix d = distance_matrix(data);
    IndexList everyone(data.size());
    for (Index i = 0; i < everyone.size(); ++i) everyone[i] = i;
    IndexList out;
    for (Index i = 0; i < data.size(); ++i) {
        const IndexList nb = nearest_among(d, i, everyone, k);
        const auto same = static_cast<Index>(
            std::count_if(nb.begin(), nb.end(), [&](Index z) { return data.label(z) == data.label(i); }));
        if (2 * same < nb.size()) out.push_back(i);
    }
    return out;
}

ResampleResult resample(const Dataset& train, const ResampleSpec& spec) {
    require_both_classes(train, "resample");
    if (spec.k < 1) throw Error("resample: k must be >= 1");
    if (!(spec.ratio > 0.0 && spec.ratio <= 1.0)) throw Error("resample: ratio must be in (0, 1]");
    switch (spec.method) {
    case ResampleMethod::smote: return run_smote(train, spec);
    case ResampleMethod::border_smote: return run_border_smote(train, spec);
    case ResampleMethod::rus: return run_rus(train, spec);
    case ResampleMethod::smote_tomek: {
        const ResampleResult balanced = run_smote(train, spec);
        const Label majority = 1 - counts_of(train).minority;
        std::vector<bool> remove(balanced.data.size(), false);
        for (auto [i, j] : tomek_links(balanced.data)) {
            remove[balanced.data.label(i) == majority ? i : j] = true;
        }
        return drop_rows(balanced, remove, "smote_tomek");
    }
    case ResampleMethod::smote_enn: {
        const ResampleResult balanced = run_smote(train, spec);
        std::vector<bool> remove(balanced.data.size(), false);
        for (Index i : enn_misclassified(balanced.data, 3)) remove[i] = true;
        return drop_rows(balanced, remove, "smote_enn");
    }
    }
    throw Error("resample: unknown method");
}

Dataset smote(const Dataset& train, Index k, std::uint64_t seed, double ratio) {
    return resample(train, ResampleSpec{ResampleMethod::smote, k, seed, ratio}).data;
}

} // namespace hardscope
