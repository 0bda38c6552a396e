#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "hardscope/histogram.hpp"
#include "hardscope/io.hpp"
#include "hardscope/report.hpp"
#include "hardscope/stats.hpp"

using namespace hardscope;

namespace {

BatchOptions quick_options() {
    BatchOptions o;
    o.repeats = 2;
    o.pool = {make_spec(Algorithm::knn, 1), make_spec(Algorithm::cart, 2), make_spec(Algorithm::gaussian_nb, 3),
              make_spec(Algorithm::logistic, 4)};
    return o;
}

HardnessReport report_of(std::vector<double> ih, std::vector<Label> labels) {
    HardnessReport r;
    r.ih = std::move(ih);
    r.labels = std::move(labels);
    return r;
}

} // namespace

TEST_CASE("spearman fixtures") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    CHECK(spearman(x, std::vector<double>{1, 3, 2, 5, 4}).rho == 0.8);
    const auto same = spearman(x, std::vector<double>{2, 4, 8, 16, 32});
    CHECK(same.rho == 1.0);
    CHECK(same.p_value == 0.0);
    CHECK(spearman(x, std::vector<double>{5, 4, 3, 2, 1}).rho == -1.0);
    const auto r = spearman(std::vector<double>{1, 2, 3, 4, 5, 6, 7}, std::vector<double>{2, 1, 4, 3, 7, 5, 6});
    CHECK(r.rho == doctest::Approx(0.8214285714285715).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(0.023448808345691505).epsilon(1e-9));
    CHECK(r.strength == Strength::very_strong);
    CHECK(r.significant());
    const auto flat = spearman(x, std::vector<double>{3, 3, 3, 3, 3});
    CHECK(flat.degenerate);
    CHECK(flat.rho == 0.0);
    CHECK(flat.p_value == 1.0);
    CHECK_FALSE(flat.significant());
    CHECK_THROWS_AS(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
    CHECK_THROWS_AS(spearman(x, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("strength bands") {
    CHECK(strength_of(0.1) == Strength::very_weak);
    CHECK(strength_of(-0.2) == Strength::weak);
    CHECK(strength_of(0.45) == Strength::moderate);
    CHECK(strength_of(-0.7) == Strength::strong);
    CHECK(strength_of(0.8) == Strength::very_strong);
    CHECK(to_string(Strength::moderate) == "moderate");
}

TEST_CASE("midranks") {
    CHECK(midranks(std::vector<double>{10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
}

TEST_CASE("spearman invariants") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const Index n = 3 + rng.uniform_index(60);
        std::vector<double> x(n), y(n), ex(n), ly(n);
        for (Index i = 0; i < n; ++i) {
            x[i] = std::round(rng.normal() * 4.0) / 4.0;
            y[i] = x[i] + rng.normal();
            ex[i] = std::exp(x[i]);
            ly[i] = std::log(y[i] + 100.0);
        }
        const auto base = spearman(x, y);
        CHECK(spearman(midranks(x), midranks(y)).rho == base.rho);
        CHECK(spearman(ex, ly).rho == doctest::Approx(base.rho).epsilon(1e-12));
        CHECK((base.p_value >= 0.0 && base.p_value <= 1.0));
        CHECK(base.strength == strength_of(base.rho));
    }
}

TEST_CASE("correlation matrix") {
    Rng rng(23);
    std::vector<NamedColumn> cols(4);
    for (Index c = 0; c < 4; ++c) {
        cols[c].name = "c" + std::to_string(c);
        for (Index i = 0; i < 200; ++i) cols[c].values.push_back(rng.normal());
    }
    cols[3].values = cols[0].values;
    const auto m = correlation_matrix(cols);
    for (Index i = 0; i < 4; ++i) {
        CHECK(m.cells[i][i].rho == 1.0);
        for (Index j = 0; j < 4; ++j) {
            CHECK(m.cells[i][j].rho == m.cells[j][i].rho);
            CHECK(m.cells[i][j].p_value == m.cells[j][i].p_value);
        }
    }
    CHECK(m.cells[0][3].rho == 1.0);
    CHECK(std::abs(m.cells[0][1].rho) < 0.2);
    CHECK(std::abs(m.cells[1][2].rho) < 0.2);
    CHECK_THROWS_AS(correlation_matrix({cols[0]}), Error);
    std::ostringstream csv;
    write_correlation_csv(csv, m);
    CHECK(csv.str().rfind("a,b,rho,p_value,strength,significant,degenerate\n", 0) == 0);
}

TEST_CASE("wilcoxon signed-rank") {
    const std::vector<double> a{10, 20, 30, 40, 50, 60, 70, 80};
    const std::vector<double> b{9, 18, 27, 36, 45, 66, 63, 72};
    const auto exact = wilcoxon_signed_rank(a, b);
    CHECK(exact.exact);
    CHECK(exact.w_minus == 6.0);
    CHECK(exact.w_plus == 30.0);
    CHECK(exact.p_value == doctest::Approx(0.109375).epsilon(1e-12));

    const std::vector<double> x{0.1, -0.1, 0.6, 0.1, -0.5, 0.4, 1.3, 0.9, -0.7, -1.3, -0.6, 0.0, -2.3, -0.2,
                                -1.2, -0.7, -0.5, -0.3, 0.4, 1.0, -0.1, 1.4, -0.7, 0.4, 0.9, 0.1, -0.7, -0.9,
                                -0.5, 0.2, -1.0, -0.2, -0.2, 0.5, 0.2, 0.4, -0.7, -0.1, 0.8, 1.5};
    const std::vector<double> y{-1.2, 1.4, 1.9, 0.9, -0.2, 0.1, 2.8, 2.9, 1.1, 0.0, -0.2, -1.2, -2.3, 0.5,
                                -2.5, -0.3, -0.1, 0.4, -0.8, 0.3, -0.5, 0.2, 1.0, -0.1, 1.2, -0.2, 0.9, 0.4,
                                0.1, -2.0, -0.9, 0.5, 0.8, -0.1, 2.0, -0.9, -1.4, 0.8, 0.8, 3.5};
    const auto approx = wilcoxon_signed_rank(x, y);
    CHECK_FALSE(approx.exact);
    CHECK(approx.n == 38);
    CHECK(std::min(approx.w_plus, approx.w_minus) == 254.0);
    CHECK(approx.p_value == doctest::Approx(0.0923162079647217).epsilon(1e-9));

    const auto zero = wilcoxon_signed_rank(a, a);
    CHECK(zero.n == 0);
    CHECK(zero.p_value == 1.0);
}

TEST_CASE("histogram bins") {
    CHECK(histogram_bin(0.0) == 0);
    CHECK(histogram_bin(1e-9) == 1);
    CHECK(histogram_bin(0.1) == 2);
    CHECK(histogram_bin(0.999) == 10);
    CHECK(histogram_bin(1.0) == 11);
    Rng rng(1);
    for (int t = 0; t < 10000; ++t) {
        double v = rng.uniform01();
        if (t % 10 == 0) v = 0.0;
        if (t % 10 == 1) v = 1.0;
        if (t % 10 == 2) v = static_cast<double>(rng.uniform_index(10)) / 10.0;
        const Index b = histogram_bin(v);
        if (v == 0.0) CHECK(b == 0);
        else if (v == 1.0) CHECK(b == 11);
        else CHECK(b == 1 + static_cast<Index>(std::floor(10.0 * v)));
    }
    CHECK_THROWS_AS(histogram_bin(1.5), Error);
}

TEST_CASE("histogram fixtures") {
    const auto zeros = hardness_histogram(std::vector<double>(7, 0.0));
    CHECK(zeros.bins.size() == histogram_bin_count);
    CHECK(zeros.bins[0].percent == 100.0);
    CHECK(zeros.bins.back().cumulative_percent == 100.0);

    const auto three = hardness_histogram(std::vector<double>{0, 0.05, 1});
    CHECK(three.bins[0].count == 1);
    CHECK(three.bins[1].count == 1);
    CHECK(three.bins[11].count == 1);

    Rng rng(2);
    std::vector<double> v(333);
    for (double& x : v) x = rng.uniform01();
    const auto h = hardness_histogram(v);
    Index total = 0;
    double last = 0.0;
    for (const auto& b : h.bins) {
        total += b.count;
        CHECK(b.cumulative_percent >= last);
        last = b.cumulative_percent;
    }
    CHECK(total == 333);
    CHECK(last == doctest::Approx(100.0));
    CHECK_THROWS_AS(hardness_histogram(std::vector<double>{}), Error);
}

TEST_CASE("histogram split by class") {
    const auto bundle = hardness_histogram(report_of({0, 0.5, 1, 0.2}, {0, 1, 1, 0}), true);
    REQUIRE(bundle.by_class.has_value());
    CHECK((*bundle.by_class)[0].total == 2);
    CHECK((*bundle.by_class)[1].bins[11].count == 1);
    CHECK(bundle.all.total == 4);
    CHECK_FALSE(hardness_histogram(report_of({0.3}, {0}), false).by_class.has_value());
    const auto json = to_json(bundle);
    CHECK(json.contains("by_class"));
    std::ostringstream csv;
    write_histogram_csv(csv, bundle);
    CHECK(csv.str().find("cumulative_percent") != std::string::npos);
}

TEST_CASE("json numbers and report serialization") {
    CHECK(json_number(INFINITY) == "inf");
    CHECK(json_number(-INFINITY) == "-inf");
    CHECK(json_number(NAN) == "nan");
    CHECK(json_number(0.5) == 0.5);
    const Dataset d = testing::two_gaussians(15, 10, 3.0, 2, 1);
    const auto report = analyze_instances(d, quick_options().pool, stratified_folds(d, 1, 1, 5));
    const auto json = hardness_report_json(report, "demo");
    CHECK(json.at("schema_version") == schema_version);
    CHECK(json.at("instances").size() == d.size());
    CHECK(json.at("instances")[0].at("measures").size() == 15);
    std::ostringstream csv;
    write_hardness_csv(csv, report);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header.rfind("index,label,ih,kDN,DS", 0) == 0);
    CHECK(header.find("ih_cart") != std::string::npos);
    Index rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == d.size());
}

TEST_CASE("pool cod across runs") {
    PoolPredictions p;
    p.learners = {"a", "b", "c"};
    p.repeats = 1;
    p.n = 4;
    p.predictions = {{{0, 1, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, -1}}};
    const auto cod = pool_cod({p, p});
    CHECK(cod(0, 1) == 0.25);
    CHECK(cod(0, 2) == 1.0);
    CHECK(cod(1, 2) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("batch report: single dataset") {
    const Dataset d = testing::two_gaussians(25, 15, 2.0, 3, 3).with_id("demo");
    const auto bundle = batch_report(std::vector<BatchInput>{{"demo", [&] { return d; }}}, quick_options());
    REQUIRE(bundle.entries.size() == 1);
    CHECK(bundle.errors.empty());
    const auto& e = bundle.entries[0];
    CHECK(e.instances == 40);
    CHECK(e.dsh == doctest::Approx(dsh(e.hardness)));
    CHECK((e.idsh >= 0.0 && e.idsh <= 2.0));
    CHECK(e.ih_correlations.size() == 15);
    const auto json = to_json(bundle);
    CHECK(json.at("schema_version") == schema_version);
    CHECK(json.at("entries").size() == 1);
    CHECK(json.at("entries")[0].contains("DSH"));
    CHECK(json.at("entries")[0].contains("IDSH"));

    const auto dir = std::filesystem::temp_directory_path() / "hardscope_batch_test";
    std::filesystem::remove_all(dir);
    const auto written = write_batch(bundle, dir);
    CHECK(written.size() == 3);
    for (const auto& p : written) CHECK(std::filesystem::exists(p));
    std::filesystem::remove_all(dir);
}

TEST_CASE("batch report: unreadable input is recorded") {
    const Dataset d = testing::two_gaussians(25, 15, 2.0, 3, 3);
    const auto bundle = batch_report(
        std::vector<BatchInput>{{"good", [&] { return d; }}, {"bad", []() -> Dataset { throw Error("cannot read"); }}},
        quick_options());
    CHECK(bundle.entries.size() == 1);
    REQUIRE(bundle.errors.size() == 1);
    CHECK(bundle.errors[0].source == "bad");
    const auto files = batch_report(std::vector<std::filesystem::path>{"/nonexistent.csv"}, LoadOptions{}, quick_options());
    CHECK(files.entries.empty());
    CHECK(files.errors.size() == 1);
}

TEST_CASE("batch report: idsh grows with overlap") {
    std::vector<BatchInput> inputs;
    for (double sep : {6.0, 2.0, 0.5}) {
        inputs.push_back({"sep" + std::to_string(sep), [sep] { return testing::two_gaussians(40, 20, sep, 2, 31); }});
    }
    const auto bundle = batch_report(inputs, quick_options());
    REQUIRE(bundle.entries.size() == 3);
    CHECK(bundle.entries[0].idsh < bundle.entries[1].idsh);
    CHECK(bundle.entries[1].idsh < bundle.entries[2].idsh);
    CHECK(bundle.idsh_correlations.size() == 22);
    std::ostringstream csv;
    std::vector<std::pair<std::string, ComplexityProfile>> rows;
    for (const auto& e : bundle.entries) rows.emplace_back(e.id, e.profile);
    write_complexity_csv(csv, rows);
    CHECK(csv.str().rfind("dataset,F1,F1v,", 0) == 0);
}

TEST_CASE("bundled fixture file matches its generator") {
    LoadOptions opts;
    opts.positive_label = "1";
    const Dataset file = load_dataset(std::filesystem::path(HARDSCOPE_DATA_DIR) / "overlap_500.csv", opts);
    const Dataset gen = testing::overlap_fixture();
    REQUIRE(file.size() == gen.size());
    CHECK(file.labels() == gen.labels());
    for (Index i = 0; i < gen.size(); ++i)
        for (Index f = 0; f < gen.num_features(); ++f) CHECK(file.features()(i, f) == gen.features()(i, f));
}

TEST_CASE("plan and wilcoxon json") {
    const auto w = to_json(wilcoxon_signed_rank(std::vector<double>{1, 2, 3}, std::vector<double>{0, 0, 1}));
    CHECK(w.contains("p_value"));
    PreprocessPlan plan;
    plan.selector_candidates.push_back({"none", 0.5, {}});
    plan.selector_candidates.push_back({"skb_anova", std::nullopt, "boom"});
    const auto j = to_json(plan);
    CHECK(j.dump().find("boom") != std::string::npos);
}
