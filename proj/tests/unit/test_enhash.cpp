#include <doctest.h>

#include <chrono>
#include <cmath>
#include <map>

#include "firehash/enhash.hpp"
#include "firehash/error.hpp"
#include "firehash/streams.hpp"

using namespace firehash;

namespace {

EnhashParams params_with(std::size_t L, double lambda, EnhashVariant v = EnhashVariant::Full) {
    EnhashParams p;
    p.L = L;
    p.lambda = lambda;
    p.rng = {11, 0};
    p.variant = v;
    return p;
}

// advance time by k steps on a point far from the probe region
void idle(EnhashModel& m, std::size_t k) {
    const std::vector<double> far{1e4, -1e4};
    for (std::size_t i = 0; i < k; ++i) m.step(far, "idle");
}

const Bucket& bucket_of(const EnhashModel& m, std::span<const double> x, std::size_t l = 0) {
    const auto& est = m.estimators()[l];
    return est.buckets.at(projection_index(est.hash, x));
}

}  // namespace

TEST_CASE("parameter validation and decay multiplier") {
    CHECK_THROWS_AS(EnhashModel(params_with(0, 0.015), 2), InvalidArgument);
    CHECK_THROWS_AS(EnhashModel(params_with(1, -1.0), 2), InvalidArgument);
    auto p = params_with(1, 0.015);
    p.bin_width = 0.0;
    CHECK_THROWS_AS(EnhashModel(p, 2), InvalidArgument);
    CHECK_THROWS_AS(EnhashModel(params_with(1, 0.015), 0), InvalidArgument);

    CHECK(decay_multiplier(0.015, 100) == doctest::Approx(0.353553).epsilon(1e-6));
    CHECK(decay_multiplier(0.0, 12345) == 1.0);
    CHECK(decay_multiplier(0.3, 0) == 1.0);
    CHECK(parse_enhash_variant("noweights") == EnhashVariant::NoWeights);
    CHECK(!parse_enhash_variant("bogus"));
}

TEST_CASE("cold start and single-class model") {
    EnhashModel m(params_with(5, 0.015), 2);
    const std::vector<double> x{0.1, 0.2};
    const auto first = m.step(x, "c");
    CHECK(!first.class_index);
    CHECK(!m.label_of(first));
    CHECK(m.time() == 1);
    CHECK(bucket_of(m, x).find(0)->count == 1.0);

    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const std::vector<double> probe{rng.normal(), rng.normal()};
        CHECK(m.label_of(m.predict(probe)) == "c");
    }
    CHECK_THROWS_AS(m.predict(std::vector<double>{1.0}), DataError);
}

TEST_CASE("update normalizes the bucket and decays only the updated class") {
    EnhashModel m(params_with(1, 0.0), 2);
    const std::vector<double> x{0.3, -0.2};
    m.step(x, "a");
    m.step(x, "b");
    const auto& b = bucket_of(m, x);
    // lambda = 0: a = 1 after its update; b = 1 pre-normalization, then both / 2
    CHECK(b.find(0)->count == 0.5);
    CHECK(b.find(1)->count == 0.5);
    m.step(x, "b");
    CHECK(bucket_of(m, x).find(1)->count == doctest::Approx(1.5 / 2.0));
}

TEST_CASE("stale class samples move the bucket less than fresh ones") {
    const std::vector<double> x{0.0, 0.0};
    auto count_after_gap = [&](std::size_t gap) {
        EnhashModel m(params_with(1, 0.015), 2);
        m.step(x, "b");
        m.step(x, "a");
        idle(m, gap - 1);
        m.step(x, "b");
        return bucket_of(m, x).find(0)->count;  // "b" was seen first
    };
    CHECK(count_after_gap(1000) < count_after_gap(1));
}

TEST_CASE("lambda = 0 leaves every decay multiplier at exactly 1") {
    EnhashModel m(params_with(10, 0.0), 2);
    DriftStreamSpec spec;
    spec.n = 2000;
    spec.rng = {1, 0};
    auto s = gen_abrupt(spec);
    while (auto sample = s->next()) {
        EnhashUpdateTrace trace;
        const auto p = m.step(sample->x, sample->label, &trace);
        for (double f : p.decay_factors) CHECK(f == 1.0);
        for (double f : trace.decay_factors) CHECK(f == 1.0);
    }
}

TEST_CASE("bucket sums and counts match a replayed log") {
    EnhashModel m(params_with(3, 0.015), 2);
    std::map<std::pair<std::int64_t, std::string>, std::pair<std::vector<double>, std::size_t>> log;
    DriftStreamSpec spec;
    spec.n = 1000;
    spec.separation = 1.0;
    spec.rng = {2, 0};
    auto s = gen_abrupt(spec);
    while (auto sample = s->next()) {
        const auto id = projection_index(m.estimators()[1].hash, sample->x);
        auto& entry = log[{id, sample->label}];
        if (entry.first.empty()) entry.first.assign(2, 0.0);
        for (int j = 0; j < 2; ++j) entry.first[j] += sample->x[j];
        ++entry.second;
        m.step(sample->x, sample->label);
    }
    for (const auto& [key, value] : log) {
        const auto& bucket = m.estimators()[1].buckets.at(key.first);
        const auto* cell = bucket.find(*m.classes().find(key.second));
        REQUIRE(cell != nullptr);
        CHECK(cell->samples == value.second);
        CHECK(cell->sum[0] == doctest::Approx(value.first[0]).epsilon(1e-12));
        CHECK(cell->sum[1] == doctest::Approx(value.first[1]).epsilon(1e-12));
        CHECK(cell->tstamp < m.time());
    }
}

TEST_CASE("single-estimator prediction follows count over distance") {
    EnhashModel m(params_with(1, 0.015), 2);
    DriftStreamSpec spec;
    spec.n = 3000;
    spec.separation = 1.0;
    spec.rng = {3, 0};
    auto s = gen_abrupt(spec);
    std::size_t checked = 0;
    while (auto sample = s->next()) {
        const auto p = m.predict(sample->x);
        const auto& est = m.estimators()[0];
        const auto it = est.buckets.find(projection_index(est.hash, sample->x));
        if (it != est.buckets.end() && p.class_index) {
            // argmax of count / dist, the decay being common to all classes in the bucket
            double best = -1.0;
            std::size_t arg = 0;
            for (const auto& cell : it->second.cells) {
                double sq = 0.0;
                for (int j = 0; j < 2; ++j) {
                    const double diff = sample->x[j] - cell.sum[j] / cell.samples;
                    sq += diff * diff;
                }
                const double v = cell.count / std::max(std::sqrt(sq), kEnhashDistanceFloor);
                if (v > best || (v == best && cell.class_index < arg)) {
                    best = v;
                    arg = cell.class_index;
                }
            }
            CHECK(*p.class_index == arg);
            ++checked;
        }
        m.step(sample->x, sample->label);
    }
    CHECK(checked > 1000);
}

TEST_CASE("updated buckets stay normalized") {
    EnhashModel m(params_with(10, 0.015), 2);
    DriftStreamSpec spec;
    spec.n = 3000;
    spec.classes = 3;
    spec.drift_points = {1500};
    spec.rng = {4, 0};
    auto s = gen_abrupt(spec);
    while (auto sample = s->next()) {
        EnhashUpdateTrace trace;
        m.step(sample->x, sample->label, &trace);
        REQUIRE(trace.weight_sums.size() == 10);
        for (double w : trace.weight_sums) CHECK(std::abs(w - 1.0) <= 1e-12);
    }
}

TEST_CASE("prequential summaries") {
    const std::vector<std::string> labels{"a", "b", "a", "b"};
    const auto perfect = summarize_prequential({true, true, true, true}, labels, 0);
    CHECK(perfect.error == 0.0);
    CHECK(*perfect.kappa_m == 1.0);
    CHECK(*perfect.kappa_t == 1.0);

    const std::vector<std::string> skew{"a", "a", "a", "b"};
    const auto majority = summarize_prequential({true, true, true, false}, skew, 0);
    CHECK(*majority.kappa_m == 0.0);

    const auto constant = summarize_prequential({true, false}, {"a", "a"}, 0);
    CHECK(!constant.kappa_m);
    CHECK(constant.persistence_accuracy == 0.5);

    CHECK(windowed_error({false, true, true, false}, 2) == std::vector<double>{1.0, 0.5, 0.0, 0.5});
    CHECK_THROWS_AS(summarize_prequential({}, {}, 0), InvalidArgument);

    DriftStreamSpec one;
    one.n = 1;
    auto s = gen_abrupt(one);
    CHECK_THROWS_AS(prequential_evaluate(EnhashParams{}, *s, 0), InvalidArgument);
}

TEST_CASE("stationary stream: windowed error falls after warm-up") {
    DriftStreamSpec spec;
    spec.n = 6000;
    spec.separation = 3.0;
    spec.rng = {5, 0};
    auto s = gen_abrupt(spec);
    EnhashParams p;
    p.rng = {5, 0};
    const auto r = prequential_evaluate(p, *s, 1000);
    CHECK(r.windowed_error[999] > r.windowed_error[2999]);
    CHECK(r.windowed_error[2999] >= r.windowed_error[5999] - 0.01);
}

TEST_CASE("label flip: error spikes then recovers") {
    DriftStreamSpec spec;
    spec.n = 10000;
    spec.drift_points = {5000};
    spec.rng = {6, 0};
    auto s = gen_abrupt(spec);
    EnhashParams p;
    p.rng = {6, 0};
    const auto r = prequential_evaluate(p, *s, 1000);
    const double pre = r.windowed_error[4999];
    CHECK(r.windowed_error[5199] > pre + 0.05);
    bool recovered = false;
    for (std::size_t t = 5200; t <= 7000; ++t) recovered = recovered || r.windowed_error[t] <= pre + 0.05;
    CHECK(recovered);
}

TEST_CASE("per-sample cost stays flat along the stream") {
    DriftStreamSpec spec;
    spec.n = 20000;
    spec.drift_points = {10000};
    spec.rng = {7, 0};
    auto [data, labels] = collect(*gen_abrupt(spec));
    EnhashModel m(EnhashParams{}, 2);
    double halves[2] = {0.0, 0.0};
    for (int h = 0; h < 2; ++h) {
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t t = h * 10000; t < (h + 1) * 10000u; ++t) {
            m.step(data.row(t), labels.registry.label(labels.values[t]));
        }
        halves[h] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    CHECK(halves[1] <= 2.0 * halves[0] + 0.01);
}
