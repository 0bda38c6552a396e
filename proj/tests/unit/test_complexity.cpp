#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "hardscope/complexity.hpp"
#include "hardscope/report.hpp"
#include "hardscope/resample.hpp"
#include "oracles.hpp"

using namespace hardscope;
using CM = ComplexityMeasure;

namespace {

Dataset line(std::vector<double> xs, std::vector<Label> ys) {
    std::vector<std::vector<double>> rows;
    for (double v : xs) rows.push_back({v});
    return Dataset(Matrix::from_rows(rows), std::move(ys));
}

ComplexityProfile raw_profile(const Dataset& d, std::uint64_t seed = 42) {
    return complexity_profile(d, {.k = 5, .standardize = false, .seed = seed});
}

Dataset tight_clusters() {
    return Dataset(Matrix::from_rows({{0, 0}, {0.1, 0}, {0, 0.1}, {0.1, 0.1}, {0.05, 0.05},
                                      {10, 10}, {10.1, 10}, {10, 10.1}, {10.1, 10.1}, {10.05, 10.05}}),
                   {0, 0, 0, 0, 0, 1, 1, 1, 1, 1});
}

} // namespace

TEST_CASE("f1 fixtures") {
    CHECK(f1_measure(line({0, 1, 10, 11}, {0, 0, 1, 1})) == doctest::Approx(1.0 / 101.0).epsilon(1e-9));
    CHECK(f1_measure(line({0, 2, 1, 1}, {0, 0, 1, 1})) == 1.0);
    CHECK(f1_measure(line({1, 1, 1, 1}, {0, 0, 1, 1})) == 1.0);
    // constant within classes, different means: r = inf
    CHECK(f1_measure(line({1, 1, 2, 2}, {0, 0, 1, 1})) == 0.0);
    CHECK(discriminant_ratio(std::vector<double>{0, 1, 10, 11}, std::vector<Label>{0, 0, 1, 1}) == doctest::Approx(100.0));
}

TEST_CASE("disjoint class ranges give zero f2 and f3") {
    const Dataset d(Matrix::from_rows({{0, 5}, {1, 6}, {3, 0}, {4, 1}}), {0, 0, 1, 1});
    ComplexityProfile p;
    feature_measures(d, p);
    CHECK(p.at(CM::F2) == 0.0);
    CHECK(p.at(CM::F3) == 0.0);
    CHECK(p.at(CM::F4) == 0.0);
}

TEST_CASE("f2, f3, f4 on overlapping features") {
    // feature 0: class ranges [0,2] and [1,3] overlap on [1,2] of [0,3]; instances 1.5 and 1 / 2 lie inside
    const Dataset d = line({0, 1.5, 2, 1, 3}, {0, 0, 0, 1, 1});
    ComplexityProfile p;
    feature_measures(d, p);
    CHECK(p.at(CM::F2) == doctest::Approx(1.0 / 3.0));
    CHECK(p.at(CM::F3) == doctest::Approx(3.0 / 5.0));
    CHECK(p.at(CM::F4) == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("f1v is small for separated data and bounded") {
    const Dataset easy = testing::two_gaussians(40, 40, 12.0, 3, 3);
    const Dataset hard = testing::two_gaussians(40, 40, 0.1, 3, 3);
    ComplexityProfile a;
    ComplexityProfile b;
    feature_measures(easy, a);
    feature_measures(hard, b);
    CHECK(a.at(CM::F1v) < 0.05);
    CHECK(b.at(CM::F1v) > a.at(CM::F1v));
    CHECK(b.at(CM::F1v) <= 1.0);
}

TEST_CASE("linearity fixtures") {
    const Dataset blobs = testing::two_gaussians(30, 30, 12.0, 2, 5);
    ComplexityProfile p;
    linearity_measures(blobs, 42, p);
    CHECK(p.at(CM::L1) == 0.0);
    CHECK(p.at(CM::L2) == 0.0);
    ComplexityProfile x;
    linearity_measures(testing::xor4(), 42, x);
    CHECK(x.at(CM::L2) >= 0.25);
    std::vector<double> xs;
    std::vector<Label> ys;
    for (int i = 0; i < 40; ++i) {
        xs.push_back(i < 20 ? i * 0.1 : 5.0 + i * 0.1);
        ys.push_back(i < 20 ? 0 : 1);
    }
    ComplexityProfile t;
    linearity_measures(line(xs, ys), 42, t);
    CHECK(t.at(CM::L3) <= 0.05);
}

TEST_CASE("neighbourhood fixtures") {
    const MeasureContext xor_ctx(testing::xor4(), 1);
    ComplexityProfile x;
    neighborhood_dataset_measures(xor_ctx, 42, x);
    CHECK(x.at(CM::N3) == 1.0);

    const Dataset blobs = testing::two_gaussians(15, 15, 30.0, 2, 2);
    ComplexityProfile b;
    neighborhood_dataset_measures(MeasureContext(blobs), 42, b);
    CHECK(b.at(CM::N3) == 0.0);
    CHECK(b.at(CM::N1) <= 2.0 / 30.0);

    // local sets include the point itself, so each of the 10 points counts 5
    ComplexityProfile t;
    neighborhood_dataset_measures(MeasureContext(tight_clusters()), 42, t);
    CHECK(t.at(CM::LSC) == doctest::Approx(0.5));
    CHECK(t.at(CM::LSC) <= 1.0 - 1.0 / 10.0);
}

TEST_CASE("t1 absorbs contained spheres") {
    // radii 3, 2, 2: the sphere around 1 lies inside the one around 0
    ComplexityProfile p;
    neighborhood_dataset_measures(MeasureContext(line({0, 1, 3}, {0, 0, 1}), 1), 42, p);
    CHECK(p.at(CM::T1) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("n2 dataset edge cases") {
    ComplexityProfile p;
    neighborhood_dataset_measures(MeasureContext(line({0, 1, 2, 3}, {0, 0, 1, 1}), 1), 42, p);
    // intra 1+1+1+1, extra 2+1+1+2
    CHECK(p.at(CM::N2) == doctest::Approx((4.0 / 6.0) / (1.0 + 4.0 / 6.0)));
}

TEST_CASE("n1, n3, lsc equal the brute-force oracle") {
    Rng rng(303);
    for (int t = 0; t < 40; ++t) {
        const Dataset d = testing::random_dataset(rng, 7 + rng.uniform_index(54), 1 + rng.uniform_index(8), t % 2 == 0);
        ComplexityProfile p;
        neighborhood_dataset_measures(MeasureContext(d), 42, p);
        CHECK(p.at(CM::N1) == testing::oracle::n1_dataset(d));
        CHECK(p.at(CM::N3) == testing::oracle::n3_dataset(d));
        CHECK(p.at(CM::LSC) == testing::oracle::lsc_dataset(d));
    }
}

TEST_CASE("network fixtures") {
    ComplexityProfile p;
    network_measures(line({0, 10, 20, 30}, {0, 0, 1, 1}), p);
    CHECK(p.at(CM::Density) == 1.0);
    CHECK(p.at(CM::ClsCoef) == 1.0);
    CHECK(p.at(CM::Hubs) == 1.0);

    const Dataset clique(Matrix::from_rows({{0, 0}, {0.1, 0}, {0, 0.1}, {0.1, 0.1}, {10, 10}}), {0, 0, 0, 0, 1});
    network_measures(clique, p);
    CHECK(p.at(CM::ClsCoef) == 0.0);
    CHECK(p.at(CM::Density) == doctest::Approx(1.0 - 6.0 / 10.0));
    CHECK(p.at(CM::Hubs) == doctest::Approx(1.0 - 4.0 / 5.0));
}

TEST_CASE("epsilon graph equals brute force") {
    Rng rng(77);
    for (int t = 0; t < 30; ++t) {
        const Dataset d = testing::random_dataset(rng, 5 + rng.uniform_index(40), 1 + rng.uniform_index(4), t % 2 == 0);
        const DistanceMatrix dm = distance_matrix(d);
        double mx = 0.0;
        for (Index i = 0; i < d.size(); ++i)
            for (Index j = 0; j < d.size(); ++j) mx = std::max(mx, testing::oracle::dist(d, i, j));
        std::vector<std::pair<Index, Index>> expected;
        for (Index i = 0; i < d.size(); ++i) {
            for (Index j = i + 1; j < d.size(); ++j) {
                if (d.label(i) == d.label(j) && testing::oracle::dist(d, i, j) < 0.15 * mx) expected.emplace_back(i, j);
            }
        }
        auto got = epsilon_graph(dm, d.labels());
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
    }
}

TEST_CASE("dimensionality fixtures") {
    Rng rng(6);
    Matrix basis(3, 20);
    for (double& v : const_cast<std::vector<double>&>(basis.values())) v = rng.normal();
    Matrix x(100, 20);
    std::vector<Label> y(100, 0);
    for (Index i = 0; i < 100; ++i) {
        const double z[3] = {rng.normal(), rng.normal(), rng.normal()};
        for (Index f = 0; f < 20; ++f) {
            x(i, f) = z[0] * basis(0, f) + z[1] * basis(1, f) + z[2] * basis(2, f) + 1e-3 * rng.normal();
        }
        y[i] = i % 3 == 0 ? 1 : 0;
    }
    ComplexityProfile p;
    dimensionality_measures(Dataset(x, y), p);
    CHECK(p.at(CM::T2) == doctest::Approx(0.2));
    CHECK(p.at(CM::T3) == doctest::Approx(0.03));
    CHECK(p.at(CM::T4) == doctest::Approx(0.15));

    Matrix dup(10, 4);
    for (Index i = 0; i < 10; ++i)
        for (Index f = 0; f < 4; ++f) dup(i, f) = static_cast<double>(i * i) * static_cast<double>(f + 1);
    dimensionality_measures(Dataset(dup, {0, 1, 0, 1, 0, 1, 0, 1, 0, 1}), p);
    CHECK(p.at(CM::T4) == doctest::Approx(0.25));

    dimensionality_measures(line({0, 1, 2}, {0, 1, 0}), p);
    CHECK(p.at(CM::T4) == 1.0);
}

TEST_CASE("balance fixtures") {
    ComplexityProfile p;
    balance_dataset_measures(line({0, 1, 2, 3}, {0, 1, 0, 1}), p);
    CHECK(p.at(CM::C1) == doctest::Approx(0.0));
    CHECK(p.at(CM::C2) == 0.0);

    std::vector<double> xs(722);
    std::vector<Label> ys(722, 0);
    for (Index i = 0; i < 722; ++i) xs[i] = static_cast<double>(i);
    for (Index i = 0; i < 16; ++i) ys[i] = 1;
    balance_dataset_measures(line(xs, ys), p);
    CHECK(p.at(CM::C2) == doctest::Approx(0.9547).epsilon(1e-4));

    std::vector<Label> nine(10, 0);
    nine[0] = 1;
    balance_dataset_measures(line({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, nine), p);
    CHECK(p.at(CM::C1) == doctest::Approx(0.531).epsilon(1e-3));

    const auto single = complexity_profile(line({0, 1, 2}, {0, 0, 0}));
    CHECK(single.single_class);
    CHECK(single.at(CM::C1) == 1.0);
    CHECK(single.at(CM::C2) == 1.0);
    CHECK_FALSE(single[CM::N3].has_value());
}

TEST_CASE("every measure lies within its bounds") {
    Rng rng(404);
    for (int t = 0; t < 80; ++t) {
        const Dataset d = testing::random_dataset(rng, 7 + rng.uniform_index(50), 1 + rng.uniform_index(6), t % 2 == 0);
        const auto p = complexity_profile(d, {.k = 5, .standardize = t % 3 != 0, .seed = static_cast<std::uint64_t>(t)});
        for (CM m : all_complexity_measures) {
            CAPTURE(to_string(m));
            const auto [lo, hi] = complexity_bounds(m, d.size(), d.num_features());
            REQUIRE(p[m].has_value());
            CHECK(*p[m] >= lo);
            CHECK(*p[m] <= hi);
        }
    }
}

TEST_CASE("label swap leaves every measure unchanged") {
    Rng rng(909);
    for (int t = 0; t < 25; ++t) {
        const Dataset d = testing::random_dataset(rng, 10 + rng.uniform_index(40), 1 + rng.uniform_index(5), t % 2 == 0);
        const auto a = complexity_profile(d);
        const auto b = complexity_profile(d.swapped_labels());
        for (CM m : all_complexity_measures) {
            CAPTURE(to_string(m));
            CHECK(*a[m] == doctest::Approx(*b[m]).epsilon(1e-9));
        }
    }
}

TEST_CASE("separation monotonicity") {
    std::array<double, 5> previous{2, 2, 2, 2, 2};
    for (double sep : {0.5, 1.5, 3.0, 6.0}) {
        const auto p = complexity_profile(testing::two_gaussians(60, 60, sep, 2, 17));
        const std::array<double, 5> now{p.at(CM::F1), p.at(CM::N1), p.at(CM::N2), p.at(CM::N3), p.at(CM::L2)};
        for (Index j = 0; j < 5; ++j) {
            CAPTURE(j);
            CHECK(now[j] <= previous[j]);
        }
        previous = now;
    }
}

TEST_CASE("balancing resamplers zero the balance measures") {
    const Dataset d = testing::two_gaussians(60, 15, 2.0, 3, 12);
    for (auto method : {ResampleMethod::smote, ResampleMethod::border_smote, ResampleMethod::rus}) {
        const auto out = resample(d, {method, 5, 1, 1.0});
        ComplexityProfile p;
        balance_dataset_measures(out.data, p);
        CHECK(p.at(CM::C1) == 0.0);
        CHECK(p.at(CM::C2) == 0.0);
    }
}

TEST_CASE("interpolated points are label-swap stable") {
    const Dataset d = testing::moons(30, 0.2, 0.0, 1);
    const Dataset a = interpolated_points(d, 5);
    const Dataset b = interpolated_points(d.swapped_labels(), 5);
    CHECK(a.size() == d.size());
    CHECK(a.features() == b.features());
}

TEST_CASE("profile serialization and names") {
    for (CM m : all_complexity_measures) CHECK(parse_complexity_measure(to_string(m)) == m);
    CHECK(family_of(CM::Hubs) == "network");
    const auto p = raw_profile(testing::xor4());
    const auto json = to_json(p);
    CHECK(json.size() == all_complexity_measures.size());
    CHECK(json.at("N3").get<double>() == 1.0);
    CHECK_THROWS_AS(ComplexityProfile{}.at(CM::F1), Error);
}
