#include "hardscope/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "hardscope/folds.hpp"
#include "hardscope/metrics.hpp"
#include "hardscope/parallel.hpp"

namespace hardscope {

using nlohmann::json;

json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json to_json(const ComplexityProfile& profile) {
    json out = json::object();
    for (ComplexityMeasure m : all_complexity_measures) {
        if (profile[m]) out[std::string(to_string(m))] = json_number(*profile[m]);
    }
    return out;
}

json to_json(const CorrelationResult& r) {
    return {{"rho", json_number(r.rho)},
            {"p_value", json_number(r.p_value)},
            {"n", r.n},
            {"strength", std::string(to_string(r.strength))},
            {"significant", r.significant()},
            {"degenerate", r.degenerate}};
}

json to_json(const CorrelationMatrix& matrix) {
    json cells = json::array();
    for (const auto& row : matrix.cells) {
        json r = json::array();
        for (const auto& c : row) r.push_back(to_json(c));
        cells.push_back(std::move(r));
    }
    return {{"names", matrix.names}, {"alpha", 0.05}, {"cells", std::move(cells)}};
}

json to_json(const HardnessHistogram& h) {
    json bins = json::array();
    for (const auto& b : h.bins) {
        bins.push_back({{"label", b.label},
                        {"lo", b.lo},
                        {"hi", b.hi},
                        {"exact", b.exact},
                        {"count", b.count},
                        {"percent", b.percent},
                        {"cumulative_percent", b.cumulative_percent}});
    }
    return {{"total", h.total}, {"bins", std::move(bins)}};
}

json to_json(const HistogramBundle& bundle) {
    json out = {{"all", to_json(bundle.all)}};
    if (bundle.by_class) {
        out["by_class"] = {{"0", to_json((*bundle.by_class)[0])}, {"1", to_json((*bundle.by_class)[1])}};
    }
    return out;
}

namespace {

json candidates_json(const std::vector<StageCandidate>& candidates) {
    json out = json::array();
    for (const auto& c : candidates) {
        json item = {{"name", c.name}};
        item["value"] = c.value ? json_number(*c.value) : json();
        if (!c.error.empty()) item["error"] = c.error;
        out.push_back(std::move(item));
    }
    return out;
}

} // namespace

json to_json(const PreprocessPlan& plan) {
    return {
        {"seed", plan.seed},
        {"normalization",
         {{"measure", "N2"},
          {"chosen", std::string(to_string(plan.normalization))},
          {"value", json_number(plan.normalization_value)},
          {"center", plan.normalizer.center},
          {"scale", plan.normalizer.scale},
          {"candidates", candidates_json(plan.normalization_candidates)}}},
        {"feature_selection",
         {{"measure", "F1"},
          {"chosen", std::string(to_string(plan.selector))},
          {"value", json_number(plan.selector_value)},
          {"kept_features", plan.kept_features},
          {"candidates", candidates_json(plan.selector_candidates)}}},
        {"resampling",
         {{"measure", "F1"},
          {"chosen", std::string(to_string(plan.resampler))},
          {"value", json_number(plan.resampler_value)},
          {"candidates", candidates_json(plan.resampler_candidates)}}},
        {"warnings", plan.warnings},
    };
}

json to_json(const WilcoxonResult& r) {
    return {{"w_plus", r.w_plus}, {"w_minus", r.w_minus}, {"n", r.n}, {"p_value", r.p_value}, {"exact", r.exact}};
}

json hardness_report_json(const HardnessReport& report, const std::string& dataset_id) {
    json instances = json::array();
    for (Index i = 0; i < report.size(); ++i) {
        json item = {{"index", i}, {"label", report.labels[i]}, {"ih", report.ih[i]}};
        if (report.measures) {
            json m = json::object();
            for (InstanceMeasure k : all_instance_measures) m[std::string(to_string(k))] = (*report.measures)[k][i];
            item["measures"] = std::move(m);
        }
        json per = json::object();
        for (Index l = 0; l < report.learners.size(); ++l) per[report.learners[l]] = report.ih_by_learner[l][i];
        item["ih_by_learner"] = std::move(per);
        instances.push_back(std::move(item));
    }
    return {{"schema_version", schema_version},
            {"kind", "hardness_report"},
            {"dataset", dataset_id},
            {"dsh", report.ih.empty() ? 0.0 : dsh(report)},
            {"learners", report.learners},
            {"warnings", report.warnings},
            {"instances", std::move(instances)}};
}

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

void write_hardness_csv(std::ostream& out, const HardnessReport& report) {
    out << "index,label,ih";
    if (report.measures) {
        for (InstanceMeasure k : all_instance_measures) out << ',' << to_string(k);
    }
    for (const auto& l : report.learners) out << ',' << csv_field("ih_" + l);
    out << '\n';
    for (Index i = 0; i < report.size(); ++i) {
        out << i << ',' << report.labels[i] << ',' << fmt(report.ih[i]);
        if (report.measures) {
            for (InstanceMeasure k : all_instance_measures) out << ',' << fmt((*report.measures)[k][i]);
        }
        for (const auto& per : report.ih_by_learner) out << ',' << fmt(per[i]);
        out << '\n';
    }
}

void write_complexity_csv(std::ostream& out, const std::vector<std::pair<std::string, ComplexityProfile>>& rows) {
    out << "dataset";
    for (ComplexityMeasure m : all_complexity_measures) out << ',' << to_string(m);
    out << '\n';
    for (const auto& [id, profile] : rows) {
        out << csv_field(id);
        for (ComplexityMeasure m : all_complexity_measures) {
            out << ',';
            if (profile[m]) out << fmt(*profile[m]);
        }
        out << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const HistogramBundle& bundle) {
    out << "subset,bin,count,percent,cumulative_percent\n";
    auto emit = [&](const std::string& subset, const HardnessHistogram& h) {
        for (const auto& b : h.bins) {
            out << subset << ',' << csv_field(b.label) << ',' << b.count << ',' << fmt(b.percent) << ','
                << fmt(b.cumulative_percent) << '\n';
        }
    };
    emit("all", bundle.all);
    if (bundle.by_class) {
        emit("class0", (*bundle.by_class)[0]);
        emit("class1", (*bundle.by_class)[1]);
    }
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix) {
    out << "a,b,rho,p_value,strength,significant,degenerate\n";
    for (Index i = 0; i < matrix.names.size(); ++i) {
        for (Index j = i + 1; j < matrix.names.size(); ++j) {
            const auto& c = matrix.cells[i][j];
            out << csv_field(matrix.names[i]) << ',' << csv_field(matrix.names[j]) << ',' << fmt(c.rho) << ','
                << fmt(c.p_value) << ',' << to_string(c.strength) << ',' << (c.significant() ? 1 : 0) << ','
                << (c.degenerate ? 1 : 0) << '\n';
        }
    }
}

CodMatrix pool_cod(const std::vector<PoolPredictions>& runs) {
    if (runs.empty()) throw Error("pool_cod: no runs");
    const auto& names = runs.front().learners;
    const Index p = names.size();
    for (const auto& r : runs) {
        if (r.learners != names) throw Error("pool_cod: runs use different pools");
    }
    Matrix values(p, p, 0.0);
    for (Index a = 0; a < p; ++a) {
        for (Index b = a + 1; b < p; ++b) {
            Index differ = 0;
            Index total = 0;
            for (const auto& run : runs) {
                for (Index r = 0; r < run.repeats; ++r) {
                    const auto& pa = run.predictions[r][a];
                    const auto& pb = run.predictions[r][b];
                    for (Index i = 0; i < run.n; ++i) {
                        if (pa[i] < 0 || pb[i] < 0) continue;
                        ++total;
                        differ += pa[i] != pb[i] ? 1 : 0;
                    }
                }
            }
            const double v = total > 0 ? static_cast<double>(differ) / static_cast<double>(total) : 0.0;
            values(a, b) = v;
            values(b, a) = v;
        }
    }
    return CodMatrix(names, std::move(values));
}

namespace {

std::vector<std::pair<InstanceMeasure, CorrelationResult>> measure_vs_ih(const InstanceMeasures& measures,
                                                                         const std::vector<double>& ih,
                                                                         const IndexList& rows) {
    std::vector<std::pair<InstanceMeasure, CorrelationResult>> out;
    if (rows.size() < 3) return out;
    std::vector<double> target;
    for (Index i : rows) target.push_back(ih[i]);
    for (InstanceMeasure m : all_instance_measures) {
        std::vector<double> v;
        for (Index i : rows) v.push_back(measures[m][i]);
        out.emplace_back(m, spearman(v, target));
    }
    return out;
}

BatchEntry analyze_entry(const Dataset& data, const BatchOptions& options) {
    BatchEntry e{};
    e.id = data.id();
    e.instances = data.size();
    e.features = data.num_features();
    e.class_counts = data.class_counts();
    e.profile = complexity_profile(data, options.measures);
    const EvaluationPlan plan = stratified_folds(data, options.seed, options.repeats, options.folds);
    const PoolPredictions preds = run_pool_cv(data, options.pool, plan, options.pipeline, options.threads);
    e.hardness = hardness_from_predictions(data, preds);
    e.hardness.measures = instance_measures(data, options.measures);
    e.dsh = dsh(e.hardness);
    e.idsh = idsh(data, preds);
    IndexList all(data.size());
    for (Index i = 0; i < all.size(); ++i) all[i] = i;
    e.ih_correlations = measure_vs_ih(*e.hardness.measures, e.hardness.ih, all);
    for (Label c : {0, 1}) {
        e.ih_correlations_by_class[c] = measure_vs_ih(*e.hardness.measures, e.hardness.ih, data.indices_of(c));
    }
    return e;
}

} // namespace

BatchReport batch_report(const std::vector<BatchInput>& inputs, const BatchOptions& options) {
    if (inputs.empty()) throw Error("batch report: no datasets");
    std::vector<std::optional<BatchEntry>> entries(inputs.size());
    std::vector<std::string> errors(inputs.size());
    parallel_for(
        inputs.size(),
        [&](Index i) {
            try {
                Dataset data = inputs[i].load();
                if (data.id().empty()) data = data.with_id(inputs[i].name);
                entries[i] = analyze_entry(data, options);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        },
        options.threads);
    BatchReport report;
    for (Index i = 0; i < inputs.size(); ++i) {
        if (entries[i]) report.entries.push_back(std::move(*entries[i]));
        else report.errors.push_back({inputs[i].name, errors[i]});
    }
    if (report.entries.size() >= 3) {
        std::vector<double> target;
        for (const auto& e : report.entries) target.push_back(e.idsh);
        for (ComplexityMeasure m : all_complexity_measures) {
            std::vector<double> v;
            for (const auto& e : report.entries) v.push_back(e.profile.at(m));
            report.idsh_correlations.emplace_back(m, spearman(v, target));
        }
    }
    return report;
}

BatchReport batch_report(const std::vector<std::filesystem::path>& paths, const LoadOptions& load_options,
                         const BatchOptions& options) {
    std::vector<BatchInput> inputs;
    for (const auto& p : paths) {
        inputs.push_back({p.string(), [p, load_options] { return load_dataset(p, load_options); }});
    }
    return batch_report(inputs, options);
}

namespace {

json correlation_rows(const std::vector<std::pair<InstanceMeasure, CorrelationResult>>& rows) {
    json out = json::object();
    for (const auto& [m, r] : rows) out[std::string(to_string(m))] = to_json(r);
    return out;
}

} // namespace

json to_json(const BatchReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back({
            {"id", e.id},
            {"instances", e.instances},
            {"features", e.features},
            {"class_counts", {e.class_counts[0], e.class_counts[1]}},
            {"complexity", to_json(e.profile)},
            {"DSH", e.dsh},
            {"IDSH", e.idsh},
            {"learners", e.hardness.learners},
            {"histogram", to_json(hardness_histogram(e.hardness, true))},
            {"ih_correlations", correlation_rows(e.ih_correlations)},
            {"ih_correlations_by_class",
             {{"0", correlation_rows(e.ih_correlations_by_class[0])},
              {"1", correlation_rows(e.ih_correlations_by_class[1])}}},
            {"warnings", e.hardness.warnings},
        });
    }
    json errors = json::array();
    for (const auto& e : report.errors) errors.push_back({{"source", e.source}, {"message", e.message}});
    json idsh_rows = json::object();
    for (const auto& [m, r] : report.idsh_correlations) idsh_rows[std::string(to_string(m))] = to_json(r);
    return {{"schema_version", schema_version},
            {"kind", "batch_report"},
            {"entries", std::move(entries)},
            {"errors", std::move(errors)},
            {"idsh_correlations", std::move(idsh_rows)}};
}

std::vector<std::filesystem::path> write_batch(const BatchReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto open = [&](const std::filesystem::path& p) {
        std::ofstream f(p);
        if (!f) throw Error("cannot write " + p.string());
        written.push_back(p);
        return f;
    };
    {
        auto f = open(dir / "bundle.json");
        f << to_json(report).dump(2) << '\n';
    }
    for (const auto& e : report.entries) {
        std::string stem = std::filesystem::path(e.id).stem().string();
        if (stem.empty()) stem = "dataset";
        {
            auto f = open(dir / (stem + ".complexity.csv"));
            write_complexity_csv(f, {{e.id, e.profile}});
        }
        {
            auto f = open(dir / (stem + ".hardness.csv"));
            write_hardness_csv(f, e.hardness);
        }
    }
    return written;
}

} // namespace hardscope
