#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "hardscope/cluster.hpp"
#include "hardscope/learners.hpp"
#include "hardscope/metrics.hpp"

using namespace hardscope;

namespace {

double accuracy(const Model& model, const Dataset& d) {
    const auto pred = model.predict(d.features());
    Index ok = 0;
    for (Index i = 0; i < d.size(); ++i) ok += pred[i] == d.label(i) ? 1 : 0;
    return static_cast<double>(ok) / static_cast<double>(d.size());
}

Dataset separable_clusters() { return testing::two_gaussians(30, 20, 20.0, 3, 77); }

} // namespace

TEST_CASE("cart memorizes xor") {
    const Dataset x = testing::xor4();
    CHECK(accuracy(fit(make_spec(Algorithm::cart), x), x) == 1.0);
}

TEST_CASE("linear svm cannot fit xor") {
    const Dataset x = testing::xor4();
    CHECK(accuracy(fit(make_spec(Algorithm::linear_svm), x), x) <= 0.75);
}

TEST_CASE("1-nn has perfect resubstitution accuracy on distinct rows") {
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        const Dataset d = testing::random_dataset(rng, 40, 3);
        CHECK(accuracy(fit(make_spec(Algorithm::knn, 0, {{"k", "1"}}), d), d) == 1.0);
    }
}

TEST_CASE("every pool member recovers separable clusters and is deterministic") {
    const Dataset d = separable_clusters();
    for (const auto& spec : default_pool(42)) {
        CAPTURE(spec.name());
        const Model a = fit(spec, d);
        const Model b = fit(spec, d);
        const auto pa = a.predict(d.features());
        CHECK(pa == d.labels());
        CHECK(pa == b.predict(d.features()));
        CHECK(a.predict(d.features()) == pa);
        CHECK(a.predict(Matrix(0, 3)).empty());
    }
}

TEST_CASE("pool members are deterministic on noisy data") {
    const Dataset d = testing::moons(80, 0.3, 0.1, 5);
    for (const auto& spec : default_pool(7)) {
        CAPTURE(spec.name());
        const auto pa = fit(spec, d).predict(d.features());
        CHECK(pa == fit(spec, d).predict(d.features()));
        for (Label l : pa) CHECK((l == 0 || l == 1));
    }
}

TEST_CASE("fit rejects single-class data and predict checks width") {
    const Dataset one(Matrix::from_rows({{0}, {1}, {2}}), {0, 0, 0});
    for (const auto& spec : default_pool(1)) CHECK_THROWS_AS(fit(spec, one), Error);
    const Model m = fit(make_spec(Algorithm::cart), testing::xor4());
    CHECK_THROWS_AS(m.predict(Matrix(1, 3)), Error);
    CHECK_THROWS_AS(m.predict_row(std::vector<double>{1.0}), Error);
}

TEST_CASE("hyperparameter validation") {
    CHECK_THROWS_AS(validate(make_spec(Algorithm::knn, 0, {{"k", "0"}})), Error);
    CHECK_THROWS_AS(validate(make_spec(Algorithm::cart, 0, {{"max_depth", "0"}})), Error);
    CHECK_THROWS_AS(validate(make_spec(Algorithm::cart, 0, {{"bogus", "1"}})), Error);
    CHECK_NOTHROW(validate(make_spec(Algorithm::cart, 0, {{"max_depth", "none"}})));
    CHECK_THROWS_AS(parse_algorithm("svm_boost"), Error);
    CHECK(default_pool().size() == 9);
}

TEST_CASE("pool parsing: text and json") {
    const auto text = parse_pool("# pool\nknn k=3\ncart max_depth=4 criterion=entropy\n\nlinear_svm\n");
    REQUIRE(text.size() == 3);
    CHECK(text[0].algorithm == Algorithm::knn);
    CHECK(text[0].get_int("k", 0) == 3);
    CHECK(text[1].get_string("criterion", "") == "entropy");
    const auto json = parse_pool(R"([{"algorithm":"knn","hyperparameters":{"k":7},"seed":3,"name":"knn7"}])");
    REQUIRE(json.size() == 1);
    CHECK(json[0].name() == "knn7");
    CHECK(json[0].seed == 3);
    CHECK(json[0].get_int("k", 0) == 7);
    CHECK_THROWS_AS(parse_pool("knn k=0"), Error);
    CHECK_THROWS_AS(parse_pool("[{\"algorithm\": 5}]"), Error);
}

TEST_CASE("single-tree forest without sampling equals cart") {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        const Dataset d = testing::random_dataset(rng, 30, 4, t % 2 == 0);
        const auto forest = make_spec(Algorithm::random_forest, 5,
                                      {{"n_estimators", "1"}, {"max_features", "all"}, {"bootstrap", "0"}});
        const auto cart = make_spec(Algorithm::cart, 5);
        const Dataset probe = testing::random_dataset(rng, 50, 4);
        CHECK(fit(forest, d).predict(probe.features()) == fit(cart, d).predict(probe.features()));
    }
}

TEST_CASE("adaboost training error does not grow with rounds on separable data") {
    const Dataset d = testing::two_gaussians(40, 25, 4.0, 2, 13);
    double previous = 1.0;
    for (int rounds : {1, 2, 5, 10, 20, 50}) {
        const double err =
            1.0 - accuracy(fit(make_spec(Algorithm::adaboost_stumps, 0, {{"n_estimators", std::to_string(rounds)}}), d), d);
        CHECK(err <= previous + 1e-12);
        previous = err;
    }
}

TEST_CASE("greedy rule list is a decision list") {
    const Dataset d = testing::moons(100, 0.2, 0.0, 3);
    const Model m = fit(make_spec(Algorithm::greedy_rule_list), d);
    CHECK(accuracy(m, d) > 0.7);
}

TEST_CASE("mcc fixtures") {
    const std::vector<Label> y{1, 0, 1, 1, 0};
    CHECK(mcc(y, y) == doctest::Approx(1.0));
    CHECK(mcc(y, std::vector<Label>(5, 1)) == 0.0);
    CHECK(mcc(Confusion{4, 3, 1, 2}) == doctest::Approx(10.0 / std::sqrt(600.0)).epsilon(1e-12));
    CHECK(mcc(Confusion{4, 3, 1, 2}) == doctest::Approx(0.4082).epsilon(1e-4));
    CHECK_THROWS_AS(mcc(y, std::vector<Label>{1}), Error);
    CHECK_THROWS_AS(mcc(std::vector<Label>{}, std::vector<Label>{}), Error);
}

TEST_CASE("mcc label-swap symmetry and range") {
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const Index n = 1 + rng.uniform_index(40);
        std::vector<Label> a(n), b(n), na(n), nb(n);
        for (Index i = 0; i < n; ++i) {
            a[i] = static_cast<Label>(rng.uniform_index(2));
            b[i] = static_cast<Label>(rng.uniform_index(2));
            na[i] = 1 - a[i];
            nb[i] = 1 - b[i];
        }
        const double v = mcc(a, b);
        CHECK(v == doctest::Approx(mcc(na, nb)).epsilon(1e-12));
        CHECK((v >= -1.0 && v <= 1.0));
    }
}

TEST_CASE("cod fixtures and pseudo-metric properties") {
    const std::vector<Label> a{0, 1, 1, 0, 1, 0, 0, 1, 1, 0};
    std::vector<Label> c(a.size());
    for (Index i = 0; i < a.size(); ++i) c[i] = 1 - a[i];
    auto b = a;
    b[2] = 0;
    b[7] = 0;
    CHECK(cod_distance(a, a) == 0.0);
    CHECK(cod_distance(a, c) == 1.0);
    CHECK(cod_distance(a, b) == doctest::Approx(0.2));
    CHECK_THROWS_AS(cod_distance(a, std::vector<Label>{1}), Error);
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        const Index n = 1 + rng.uniform_index(30);
        std::vector<std::vector<Label>> v(3, std::vector<Label>(n));
        for (auto& x : v)
            for (auto& l : x) l = static_cast<Label>(rng.uniform_index(2));
        CHECK(cod_distance(v[0], v[1]) == cod_distance(v[1], v[0]));
        CHECK(cod_distance(v[0], v[2]) <= cod_distance(v[0], v[1]) + cod_distance(v[1], v[2]) + 1e-12);
    }
}

TEST_CASE("clustering: identical learners merge at height 0") {
    const CodMatrix cod({"a", "b"}, Matrix::from_rows({{0, 0}, {0, 0}}));
    const auto result = cluster_pool(cod, Linkage::average, 0.0);
    REQUIRE(result.dendrogram.merges.size() == 1);
    CHECK(result.dendrogram.merges[0].height == 0.0);
    CHECK(result.clusters.size() == 1);
}

TEST_CASE("clustering: average linkage by hand") {
    const CodMatrix cod({"A", "B", "C"}, Matrix::from_rows({{0, 0.1, 0.5}, {0.1, 0, 0.5}, {0.5, 0.5, 0}}));
    const auto result = cluster_pool(cod);
    CHECK(result.clusters == std::vector<IndexList>{{0, 1}, {2}});
    const auto& merges = result.dendrogram.merges;
    REQUIRE(merges.size() == 2);
    CHECK(merges[0].height == doctest::Approx(0.1));
    CHECK(merges[1].height == doctest::Approx(0.5));
    CHECK(result.dendrogram.cut(0.5).size() == 1);
    CHECK(result.dendrogram.to_newick() == "(C:0.5,(A:0.1,B:0.1):0.4);");
    const auto json = result.dendrogram.to_json();
    CHECK(json.at("root").at("height").get<double>() == doctest::Approx(0.5));
    CHECK(json.at("root").at("children").size() == 2);
}

TEST_CASE("clustering: UPGMA averages over members") {
    // d(AB, C) = (0.4 + 0.6) / 2 = 0.5 ; d(AB, D) = 0.8 ; d(C, D) = 0.7
    const CodMatrix cod({"A", "B", "C", "D"},
                        Matrix::from_rows({{0, 0.2, 0.4, 0.8}, {0.2, 0, 0.6, 0.8}, {0.4, 0.6, 0, 0.7}, {0.8, 0.8, 0.7, 0}}));
    const auto merges = cluster_pool(cod).dendrogram.merges;
    REQUIRE(merges.size() == 3);
    CHECK(merges[1].height == doctest::Approx(0.5));
    CHECK(merges[1].size == 3);
    // d(ABC, D) = (0.8 + 0.8 + 0.7) / 3
    CHECK(merges[2].height == doctest::Approx(2.3 / 3.0));
}

TEST_CASE("cod matrix validation") {
    CHECK_THROWS_AS(cluster_pool(CodMatrix({"a"}, Matrix::from_rows({{0}}))), Error);
    CHECK_THROWS_AS(CodMatrix({"a", "b"}, Matrix::from_rows({{0, 0.1}, {0.2, 0}})), Error);
    CHECK_THROWS_AS(CodMatrix({"a", "b"}, Matrix::from_rows({{0.1, 0.1}, {0.1, 0}})), Error);
    CHECK_THROWS_AS(CodMatrix({"a", "b"}, Matrix::from_rows({{0, 1.5}, {1.5, 0}})), Error);
    CHECK_THROWS_AS(cluster_pool(CodMatrix({"a", "b"}, Matrix::from_rows({{0, 0.1}, {0.1, 0}})), Linkage::average, -1.0),
                    Error);
    const auto m = CodMatrix::from_predictions({"x", "y", "z"}, {{0, 1, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 1}});
    CHECK(m(0, 1) == 0.25);
    CHECK(m(0, 2) == 1.0);
}

TEST_CASE("forest importances") {
    const Dataset d = testing::two_gaussians(50, 50, 6.0, 1, 3);
    Matrix x(d.size(), 2);
    Rng rng(1);
    for (Index i = 0; i < d.size(); ++i) {
        x(i, 0) = rng.normal();
        x(i, 1) = d.features()(i, 0);
    }
    const auto imp = forest_importances(make_spec(Algorithm::random_forest, 1), d.with_features(x));
    REQUIRE(imp.size() == 2);
    CHECK(imp[1] > imp[0]);
    CHECK_THROWS_AS(forest_importances(make_spec(Algorithm::cart), d), Error);
}
