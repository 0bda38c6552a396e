#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hardscope/metrics.hpp"
#include "hardscope/report.hpp"

namespace hs = hardscope;
using nlohmann::json;

namespace {

struct Globals {
    std::uint64_t seed = 42;
    hs::Index folds = 5;
    hs::Index repeats = 5;
    std::string pool = "default";
    hs::Index k = 5;
    std::string out;
    std::string format = "json";
    std::string label_col;
    std::string positive_label;
    std::vector<std::string> drop;
    bool binarize = false;
    std::string resample = "smote";
    std::string fs = "cfs";
    std::string norm = "standard";
    unsigned threads = 0;
};

hs::LoadOptions load_options(const Globals& g) {
    hs::LoadOptions o;
    if (!g.label_col.empty()) o.label_column = g.label_col;
    if (!g.positive_label.empty()) o.positive_label = g.positive_label;
    o.drop_columns = g.drop;
    o.binarize_counts = g.binarize;
    return o;
}

hs::Dataset load(const Globals& g, const std::string& path) { return hs::load_dataset(path, load_options(g)); }

std::vector<hs::LearnerSpec> pool_of(const Globals& g) {
    if (g.pool.empty() || g.pool == "default") return hs::default_pool(g.seed);
    std::ifstream in(g.pool);
    if (!in) throw hs::Error("cannot read pool file " + g.pool);
    std::stringstream text;
    text << in.rdbuf();
    return hs::parse_pool(text.str());
}

hs::BaselinePipeline pipeline_of(const Globals& g) {
    hs::BaselinePipeline p;
    p.normalization = hs::parse_norm_kind(g.norm);
    p.selector = hs::parse_feature_select_spec(g.fs);
    p.selector.seed = g.seed;
    if (g.resample == "none") {
        p.resampler.reset();
    } else {
        p.resampler = hs::parse_resample_spec(g.resample);
        p.resampler->seed = g.seed;
    }
    return p;
}

hs::MeasureOptions measure_options(const Globals& g) { return {g.k, true, g.seed}; }

hs::EvaluationPlan plan_of(const Globals& g, const hs::Dataset& data) {
    return hs::stratified_folds(data, g.seed, g.repeats, g.folds);
}

bool csv(const Globals& g) { return g.format == "csv"; }

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw hs::Error("cannot write " + g.out);
    f << text;
}

void emit(const Globals& g, const json& doc) { emit(g, doc.dump(2) + "\n"); }

void analyze_dataset(const Globals& g, const std::vector<std::string>& files) {
    std::vector<std::pair<std::string, hs::ComplexityProfile>> rows;
    for (const auto& f : files) rows.emplace_back(f, hs::complexity_profile(load(g, f), measure_options(g)));
    if (csv(g)) {
        std::ostringstream s;
        hs::write_complexity_csv(s, rows);
        emit(g, s.str());
        return;
    }
    json datasets = json::array();
    for (const auto& [id, profile] : rows) {
        json item = {{"dataset", id}, {"complexity", hs::to_json(profile)}};
        if (profile.single_class) item["single_class"] = true;
        datasets.push_back(std::move(item));
    }
    emit(g, json{{"schema_version", hs::schema_version}, {"kind", "complexity_profile"}, {"datasets", datasets}});
}

void analyze_instances(const Globals& g, const std::string& file) {
    const hs::Dataset data = load(g, file);
    const hs::InstanceMeasures m = hs::instance_measures(data, measure_options(g));
    if (csv(g)) {
        std::ostringstream s;
        s.precision(17);
        s << "index,label";
        for (auto k : hs::all_instance_measures) s << ',' << hs::to_string(k);
        s << '\n';
        for (hs::Index i = 0; i < data.size(); ++i) {
            s << i << ',' << data.label(i);
            for (auto k : hs::all_instance_measures) s << ',' << m[k][i];
            s << '\n';
        }
        emit(g, s.str());
        return;
    }
    json measures = json::object();
    for (auto k : hs::all_instance_measures) measures[std::string(hs::to_string(k))] = m[k];
    emit(g, json{{"schema_version", hs::schema_version},
                 {"kind", "instance_measures"},
                 {"dataset", file},
                 {"labels", data.labels()},
                 {"measures", measures}});
}

void hardness(const Globals& g, const std::string& file, bool with_measures, bool split) {
    const hs::Dataset data = load(g, file);
    const hs::PoolPredictions preds =
        hs::run_pool_cv(data, pool_of(g), plan_of(g, data), pipeline_of(g), g.threads);
    hs::HardnessReport report = hs::hardness_from_predictions(data, preds);
    if (with_measures) report.measures = hs::instance_measures(data, measure_options(g));
    if (csv(g)) {
        std::ostringstream s;
        hs::write_hardness_csv(s, report);
        emit(g, s.str());
        return;
    }
    json doc = hs::hardness_report_json(report, file);
    doc["idsh"] = hs::idsh(data, preds);
    json per = json::object();
    const auto mccs = hs::learner_mcc(data, preds);
    for (hs::Index l = 0; l < preds.learners.size(); ++l) per[preds.learners[l]] = hs::json_number(mccs[l]);
    doc["learner_mcc"] = per;
    doc["histogram"] = hs::to_json(hs::hardness_histogram(report, split));
    doc["failures"] = preds.failures;
    emit(g, doc);
}

struct TrainArgs {
    std::string measure = "kDN";
    hs::Index estimators = 50;
    std::string base = "cart";
    std::string predict;
};

hs::EnsembleModel train_one(const Globals& g, const TrainArgs& t, bool hardness_weighted, const hs::Dataset& train) {
    hs::BaggingOptions o;
    o.n_estimators = t.estimators;
    o.base = hs::make_spec(hs::parse_algorithm(t.base), g.seed);
    o.seed = g.seed;
    o.smote_k = g.k;
    o.threads = g.threads;
    if (!hardness_weighted) return hs::smote_bagging_train(train, o);
    return hs::hmsmote_bagging_train(train, hs::parse_instance_measure(t.measure), o, measure_options(g));
}

void train(const Globals& g, const TrainArgs& t, bool hardness_weighted, const std::string& file) {
    const hs::Dataset data = load(g, file);
    const hs::EvaluationPlan plan = plan_of(g, data);
    std::vector<double> per_repeat;
    for (hs::Index r = 0; r < plan.repeats; ++r) {
        std::vector<hs::Label> predicted(data.size(), 0);
        for (hs::Index f = 0; f < plan.folds; ++f) {
            const auto model = train_one(g, t, hardness_weighted, data.subset(plan.train_indices(r, f)));
            const auto& test = plan.test_indices(r, f);
            const auto out = model.predict(data.features().select_rows(test));
            for (hs::Index i = 0; i < test.size(); ++i) predicted[test[i]] = out[i];
        }
        per_repeat.push_back(hs::mcc(data.labels(), predicted));
    }
    double mean = 0.0;
    for (double v : per_repeat) mean += v;
    mean /= static_cast<double>(per_repeat.size());

    json doc = {{"schema_version", hs::schema_version},
                {"kind", "ensemble_cv"},
                {"dataset", file},
                {"method", hardness_weighted ? "hmsmote_bagging" : "smote_bagging"},
                {"estimators", t.estimators},
                {"base", t.base},
                {"mcc", hs::json_number(mean)},
                {"mcc_by_repeat", per_repeat}};
    if (hardness_weighted) doc["measure"] = t.measure;

    if (!t.predict.empty()) {
        const auto model = train_one(g, t, hardness_weighted, data);
        const hs::Dataset target = load(g, t.predict);
        if (target.num_features() != data.num_features()) throw hs::Error("predict file has a different feature count");
        const auto votes = model.vote_fractions(target.features());
        json rows = json::array();
        for (hs::Index i = 0; i < votes.size(); ++i) {
            rows.push_back({{"index", i}, {"vote", votes[i]}, {"prediction", votes[i] >= 0.5 ? 1 : 0}});
        }
        doc["predictions"] = rows;
    }
    emit(g, doc);
}

void adaptive(const Globals& g, const std::string& file, const std::string& plan_path) {
    const hs::Dataset data = load(g, file);
    hs::AdaptiveOptions o;
    o.seed = g.seed;
    o.smote_k = g.k;
    const auto result = hs::adaptive_preprocess(data, o);
    json plan = hs::to_json(result.plan);
    plan["schema_version"] = hs::schema_version;
    plan["kind"] = "preprocess_plan";
    plan["dataset"] = file;
    if (!plan_path.empty()) {
        std::ofstream f(plan_path);
        if (!f) throw hs::Error("cannot write " + plan_path);
        f << plan.dump(2) << '\n';
    }
    if (g.out.empty()) {
        hs::write_csv(std::cout, result.data);
    } else {
        hs::save_csv(g.out, result.data);
    }
    if (plan_path.empty()) std::cerr << plan.dump(2) << '\n';
}

void pool_cluster(const Globals& g, const std::vector<std::string>& files, double cut) {
    const auto pool = pool_of(g);
    std::vector<hs::PoolPredictions> runs;
    for (const auto& f : files) {
        const hs::Dataset data = load(g, f);
        runs.push_back(hs::run_pool_cv(data, pool, plan_of(g, data), pipeline_of(g), g.threads));
    }
    const hs::CodMatrix cod = hs::pool_cod(runs);
    const hs::PoolClustering c = hs::cluster_pool(cod, hs::Linkage::average, cut);
    const auto& names = cod.names();
    if (csv(g)) {
        std::ostringstream s;
        s.precision(17);
        s << "learner";
        for (const auto& n : names) s << ',' << n;
        s << '\n';
        for (hs::Index i = 0; i < cod.size(); ++i) {
            s << names[i];
            for (hs::Index j = 0; j < cod.size(); ++j) s << ',' << cod(i, j);
            s << '\n';
        }
        emit(g, s.str());
        return;
    }
    json matrix = json::array();
    for (hs::Index i = 0; i < cod.size(); ++i) {
        json row = json::array();
        for (hs::Index j = 0; j < cod.size(); ++j) row.push_back(cod(i, j));
        matrix.push_back(row);
    }
    json clusters = json::array();
    for (const auto& cl : c.clusters) {
        json members = json::array();
        for (hs::Index i : cl) members.push_back(names[i]);
        clusters.push_back(members);
    }
    emit(g, json{{"schema_version", hs::schema_version},
                 {"kind", "pool_clustering"},
                 {"datasets", files},
                 {"learners", names},
                 {"cod", matrix},
                 {"cut", cut},
                 {"clusters", clusters},
                 {"dendrogram", c.dendrogram.to_json()},
                 {"newick", c.dendrogram.to_newick()}});
}

// Numeric table keyed by header name; non-numeric cells become NaN.
std::map<std::string, std::vector<double>> read_table(const std::string& path, std::vector<std::string>& order) {
    std::ifstream in(path);
    if (!in) throw hs::Error("cannot read " + path);
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') quoted = !quoted;
            else if (ch == ',' && !quoted) cells.push_back(std::exchange(cell, {}));
            else if (ch != '\r') cell += ch;
        }
        cells.push_back(cell);
        return cells;
    };
    std::string line;
    if (!std::getline(in, line)) throw hs::Error(path + ": empty file");
    order = split(line);
    std::map<std::string, std::vector<double>> table;
    hs::Index row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row;
        const auto cells = split(line);
        if (cells.size() != order.size()) {
            throw hs::Error(path + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                            " fields, expected " + std::to_string(order.size()));
        }
        for (hs::Index c = 0; c < cells.size(); ++c) {
            char* end = nullptr;
            const double v = std::strtod(cells[c].c_str(), &end);
            table[order[c]].push_back(end != cells[c].c_str() ? v : std::numeric_limits<double>::quiet_NaN());
        }
    }
    return table;
}

void correlate(const Globals& g, const std::string& ih_path, const std::string& measures_path) {
    std::vector<std::string> ih_cols;
    std::vector<std::string> m_cols;
    auto ih_table = read_table(ih_path, ih_cols);
    auto m_table = read_table(measures_path, m_cols);
    if (!ih_table.count("ih")) throw hs::Error(ih_path + ": no \"ih\" column");
    std::vector<hs::NamedColumn> columns{{"ih", ih_table["ih"]}};
    for (const auto& name : m_cols) {
        if (name == "index" || name == "label" || name == "ih" || name.rfind("ih_", 0) == 0) continue;
        if (m_table[name].size() != columns.front().values.size()) {
            throw hs::Error("row counts differ between " + ih_path + " and " + measures_path);
        }
        columns.push_back({name, m_table[name]});
    }
    if (columns.size() < 2) throw hs::Error(measures_path + ": no measure columns");
    const auto matrix = hs::correlation_matrix(columns);
    if (csv(g)) {
        std::ostringstream s;
        hs::write_correlation_csv(s, matrix);
        emit(g, s.str());
        return;
    }
    json doc = hs::to_json(matrix);
    doc["schema_version"] = hs::schema_version;
    doc["kind"] = "correlation_matrix";
    emit(g, doc);
}

void batch(const Globals& g, const std::vector<std::string>& files) {
    if (g.out.empty()) throw hs::Error("report batch needs --out DIR");
    hs::BatchOptions o;
    o.seed = g.seed;
    o.repeats = g.repeats;
    o.folds = g.folds;
    o.pool = pool_of(g);
    o.pipeline = pipeline_of(g);
    o.measures = measure_options(g);
    o.threads = g.threads;
    std::vector<std::filesystem::path> paths(files.begin(), files.end());
    const auto report = hs::batch_report(paths, load_options(g), o);
    for (const auto& p : hs::write_batch(report, g.out)) std::cout << p.string() << '\n';
    for (const auto& e : report.errors) std::cerr << e.source << ": " << e.message << '\n';
    if (report.entries.empty()) throw hs::Error("no dataset could be analyzed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Instance hardness and dataset complexity for binary classification"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
    app.add_option("--folds", g.folds, "Cross-validation folds")->capture_default_str()->check(CLI::Range(2, 1000));
    app.add_option("--repeats", g.repeats, "Cross-validation repeats")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--pool", g.pool, "Learner pool file (text lines or JSON), or 'default'")->capture_default_str();
    app.add_option("--k", g.k, "Neighbours for kDN and SMOTE")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("-o,--out", g.out, "Output file (directory for report batch)");
    app.add_option("--format", g.format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--label-col", g.label_col, "Label column name or zero-based index (default: last)");
    app.add_option("--positive-label", g.positive_label, "Raw label value mapped to class 1 (default: rarer)");
    app.add_option("--drop", g.drop, "Columns to ignore")->delimiter(',');
    app.add_flag("--binarize-counts", g.binarize, "Numeric labels > 0 become class 1");
    app.add_option("--resample", g.resample, "Per-fold resampler, e.g. smote:k=5 or none")->capture_default_str();
    app.add_option("--fs", g.fs, "Per-fold feature selector, e.g. skb_anova:k=10")->capture_default_str();
    app.add_option("--norm", g.norm, "Per-fold normalization")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = hardware)")->capture_default_str();
    app.fallthrough();

    auto* analyze = app.add_subcommand("analyze", "Complexity and instance measures");
    analyze->require_subcommand(1);
    std::vector<std::string> dataset_files;
    auto* a_dataset = analyze->add_subcommand("dataset", "Dataset complexity profile");
    a_dataset->add_option("FILE", dataset_files)->required();
    std::string instance_file;
    auto* a_instances = analyze->add_subcommand("instances", "Per-instance hardness measures");
    a_instances->add_option("FILE", instance_file)->required();

    std::string hardness_file;
    bool with_measures = false;
    bool split = false;
    auto* h = app.add_subcommand("hardness", "Pool-based instance hardness, DSH and IDSH");
    h->add_option("FILE", hardness_file)->required();
    h->add_flag("--measures", with_measures, "Also compute the instance measures");
    h->add_flag("--by-class", split, "Split the histogram by class");

    auto* train_cmd = app.add_subcommand("train", "Bagging ensembles under cross-validation");
    train_cmd->require_subcommand(1);
    TrainArgs targs;
    std::string train_file;
    auto add_train_opts = [&](CLI::App* sub) {
        sub->add_option("FILE", train_file)->required();
        sub->add_option("--estimators", targs.estimators, "Ensemble size")->capture_default_str();
        sub->add_option("--base", targs.base, "Base learner")->capture_default_str();
        sub->add_option("--predict", targs.predict, "Train on FILE, then predict this file");
    };
    auto* hmsb = train_cmd->add_subcommand("hmsb", "Hardness-weighted SMOTE bagging");
    add_train_opts(hmsb);
    hmsb->add_option("--measure", targs.measure, "Instance measure guiding the draws")->capture_default_str();
    auto* smoteb = train_cmd->add_subcommand("smoteb", "Uniform SMOTE bagging");
    add_train_opts(smoteb);

    auto* pre = app.add_subcommand("preprocess", "Complexity-guided preprocessing");
    pre->require_subcommand(1);
    std::string pre_file;
    std::string plan_path;
    auto* adapt = pre->add_subcommand("adaptive", "Greedy normalization, selection and resampling");
    adapt->add_option("FILE", pre_file)->required();
    adapt->add_option("--plan", plan_path, "Write the plan JSON here (default: stderr)");

    auto* pool_cmd = app.add_subcommand("pool", "Classifier pool diversity");
    pool_cmd->require_subcommand(1);
    std::vector<std::string> pool_files;
    double cut = 0.13;
    auto* cluster = pool_cmd->add_subcommand("cluster", "COD matrix and average-linkage clusters");
    cluster->add_option("FILE", pool_files)->required();
    cluster->add_option("--cut", cut, "Dendrogram cut height")->capture_default_str()->check(CLI::Range(0.0, 1.0));

    auto* report = app.add_subcommand("report", "Correlations and batch reports");
    report->require_subcommand(1);
    std::string ih_csv;
    std::string measures_csv;
    auto* corr = report->add_subcommand("correlate", "Spearman correlations between IH and measures");
    corr->add_option("IH_CSV", ih_csv)->required();
    corr->add_option("MEASURES_CSV", measures_csv)->required();
    std::vector<std::string> batch_files;
    auto* batch_cmd = report->add_subcommand("batch", "Full analysis of several datasets into --out DIR");
    batch_cmd->add_option("FILE", batch_files)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*a_dataset) analyze_dataset(g, dataset_files);
        else if (*a_instances) analyze_instances(g, instance_file);
        else if (*h) hardness(g, hardness_file, with_measures, split);
        else if (*hmsb) train(g, targs, true, train_file);
        else if (*smoteb) train(g, targs, false, train_file);
        else if (*adapt) adaptive(g, pre_file, plan_path);
        else if (*cluster) pool_cluster(g, pool_files, cut);
        else if (*corr) correlate(g, ih_csv, measures_csv);
        else if (*batch_cmd) batch(g, batch_files);
    } catch (const std::exception& e) {
        std::cerr << "hardscope: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
