#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "firehash/error.hpp"
#include "firehash/hashing.hpp"
#include "firehash/streams.hpp"

using namespace firehash;

TEST_CASE("planted dataset structure") {
    const auto spec = PlantedOutlierSpec::defaults(RngSpec{1, 0});
    const auto p = gen_planted(spec);
    CHECK(p.data.rows() == 260);
    CHECK(p.labels.outlier_count() == 10);
    const auto& dense = spec.clusters[0];
    for (std::size_t i = 0; i < p.types.size(); ++i) {
        const auto row = p.data.row(i);
        if (p.types[i] == OutlierType::Global) {
            for (const auto& c : spec.clusters) {
                CHECK(std::hypot(row[0] - c.center[0], row[1] - c.center[1]) >= 10 * c.sigma);
            }
        } else if (p.types[i] == OutlierType::Local) {
            const double r = std::hypot(row[0] - dense.center[0], row[1] - dense.center[1]);
            CHECK(r >= 2 * dense.sigma - 1e-12);
            CHECK(r <= 4 * dense.sigma + 1e-12);
        }
        CHECK((p.labels.values[i] == 1) == (p.types[i] != OutlierType::Inlier));
    }
    CHECK(gen_planted(spec).data.values() == p.data.values());

    auto none = spec;
    none.global_count = none.local_count = 0;
    CHECK(gen_planted(none).labels.outlier_count() == 0);

    auto bad = spec;
    bad.clusters[1].size = 0;
    CHECK_THROWS_AS(gen_planted(bad), InvalidArgument);
}

TEST_CASE("abrupt stream flips the component labels") {
    DriftStreamSpec spec;
    spec.n = 4000;
    spec.drift_points = {2000};
    spec.rng = {3, 0};
    auto [data, labels] = collect(*gen_abrupt(spec));
    REQUIRE(data.rows() == 4000);
    // the fixed rule "label 1 on the positive x0 side" is right before the drift, wrong after
    std::size_t agree_before = 0, agree_after = 0;
    for (std::size_t t = 0; t < 4000; ++t) {
        const bool rule = data(t, 0) > 0;
        const bool is1 = labels.registry.label(labels.values[t]) == "1";
        (t < 2000 ? agree_before : agree_after) += rule == is1;
    }
    CHECK(agree_before > 1990);
    CHECK(agree_after < 10);
    CHECK((agree_before + agree_after) / 4000.0 == doctest::Approx(0.5).epsilon(0.01));

    spec.drift_points.clear();
    auto [d2, l2] = collect(*gen_abrupt(spec));
    std::size_t agree = 0;
    for (std::size_t t = 0; t < 4000; ++t) agree += (d2(t, 0) > 0) == (l2.registry.label(l2.values[t]) == "1");
    CHECK(agree > 3990);
}

TEST_CASE("rotating hyperplane") {
    DriftStreamSpec spec;
    spec.kind = DriftKind::Incremental;
    spec.n = 4000;
    spec.rng = {4, 0};
    spec.rate = 0.0;
    auto [data, labels] = collect(*gen_incremental(spec));
    const auto first = labels.registry.label(labels.values[0]);
    const bool first_positive = data(0, 0) > 0;
    for (std::size_t t = 0; t < 4000; ++t) {
        CHECK(((data(t, 0) > 0) == first_positive) == (labels.registry.label(labels.values[t]) == first));
    }

    // quarter turn: labels of the last samples disagree with the t=0 concept about half the time
    spec.rate = (std::numbers::pi / 2) / 4000.0;
    auto [d2, l2] = collect(*gen_incremental(spec));
    std::size_t disagree = 0, total = 0;
    for (std::size_t t = 3000; t < 4000; ++t) {
        const bool now = l2.registry.label(l2.values[t]) == "1";
        const bool at0 = d2(t, 0) > 0;
        disagree += now != at0;
        ++total;
    }
    const double frac = static_cast<double>(disagree) / total;
    CHECK(frac > 0.3);
    CHECK(frac < 0.7);

    // full turn returns to the first concept
    spec.n = 1000;
    spec.rate = 2 * std::numbers::pi / 1000.0;
    auto [d3, l3] = collect(*gen_incremental(spec));
    std::size_t wrong = 0;
    for (std::size_t t = 990; t < 1000; ++t) wrong += (l3.registry.label(l3.values[t]) == "1") != (d3(t, 0) > 0);
    CHECK(wrong <= 2);
}

TEST_CASE("virtual drift keeps the boundary fixed") {
    DriftStreamSpec spec;
    spec.kind = DriftKind::Virtual;
    spec.n = 4000;
    spec.rng = {5, 0};
    spec.rate = 0.005;
    auto [data, labels] = collect(*gen_virtual(spec));
    for (std::size_t t = 0; t < 4000; ++t) {
        CHECK((labels.registry.label(labels.values[t]) == "1") == (data(t, 0) > 0));
    }
    // early and late samples hash to mostly disjoint buckets
    Rng rng(1);
    const auto hash = draw_gaussian_projection(rng, 2, 0.1);
    std::set<std::int64_t> early;
    for (std::size_t t = 0; t < 500; ++t) early.insert(projection_index(hash, data.row(t)));
    std::size_t shared = 0;
    for (std::size_t t = 3500; t < 4000; ++t) shared += early.count(projection_index(hash, data.row(t)));
    CHECK(shared < 100);
}

TEST_CASE("stream spec validation and names") {
    DriftStreamSpec spec;
    spec.n = 0;
    CHECK_THROWS_AS(make_drift_stream(spec), InvalidArgument);
    spec.n = 10;
    spec.drift_points = {10};
    CHECK_THROWS_AS(make_drift_stream(spec), InvalidArgument);
    spec.drift_points = {5, 2};
    CHECK_THROWS_AS(make_drift_stream(spec), InvalidArgument);
    CHECK(parse_drift_kind("recurring") == DriftKind::Recurring);
    CHECK(!parse_drift_kind("sudden"));
    CHECK(to_string(DriftKind::Virtual) == "virtual");
}

TEST_CASE("streams are deterministic and finite") {
    for (auto kind : {DriftKind::Abrupt, DriftKind::Incremental, DriftKind::Virtual, DriftKind::Recurring}) {
        DriftStreamSpec spec;
        spec.kind = kind;
        spec.n = 500;
        spec.d = 3;
        spec.rate = 0.01;
        spec.drift_points = {100, 300};
        spec.rng = {8, 1};
        auto a = collect(*make_drift_stream(spec));
        auto b = collect(*make_drift_stream(spec));
        CHECK(a.first.values() == b.first.values());
        CHECK(a.second.values == b.second.values);
    }
}
