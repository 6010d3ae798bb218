#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "firehash/error.hpp"
#include "firehash/fire.hpp"

using namespace firehash;

namespace {

DataMatrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n * d);
    for (auto& x : v) x = rng.normal();
    return DataMatrix(n, d, std::move(v));
}

// pairwise re-implementation: count rows whose bucket equals row i's bucket
std::vector<double> pairwise_scores(const DataMatrix& data, const SketchEnsemble& model) {
    const std::size_t n = data.rows();
    std::vector<double> scores(n, 0.0);
    for (std::size_t l = 0; l < model.L; ++l) {
        std::vector<std::uint64_t> ids(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = sketch_index(model.estimators[l], data.row(i));
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t same = 0;
            for (std::size_t k = 0; k < n; ++k) same += ids[k] == ids[i];
            scores[i] += -2.0 * std::log(static_cast<double>(same) / static_cast<double>(n));
        }
    }
    return scores;
}

}  // namespace

TEST_CASE("fit_fire is deterministic and validates arguments") {
    const auto data = random_matrix(30, 3, 1);
    const auto a = fit_fire(data, 10, 5, kFireDefaultH, RngSpec{5, 0});
    const auto b = fit_fire(data, 10, 5, kFireDefaultH, RngSpec{5, 0});
    CHECK(a == b);
    CHECK(a.estimators.size() == 10);
    CHECK_FALSE(a == fit_fire(data, 10, 5, kFireDefaultH, RngSpec{6, 0}));
    CHECK_THROWS_AS(fit_fire(data, 0, 5, kFireDefaultH, {}), InvalidArgument);
    CHECK_THROWS_AS(fit_fire(data, 10, 0, kFireDefaultH, {}), InvalidArgument);
    CHECK_THROWS_AS(fit_fire(data, 10, 5, 1017882, {}), InvalidArgument);
    CHECK_NOTHROW(fit_fire(data, kFireDefaultL, kFireDefaultM, kFireDefaultH, {}));
}

TEST_CASE("d = 1 draws only feature 0 within its range") {
    const auto data = DataMatrix::from_rows({{-1.0}, {2.0}, {0.5}});
    const auto m = fit_fire(data, 5, 7, kFireDefaultH, RngSpec{1, 0});
    for (const auto& e : m.estimators) {
        for (std::size_t j = 0; j < e.size(); ++j) {
            CHECK(e.feature_indices[j] == 0);
            CHECK(e.thresholds[j] >= -1.0);
            CHECK(e.thresholds[j] <= 2.0);
        }
    }
}

TEST_CASE("identical rows score exactly zero") {
    const auto data = DataMatrix::from_rows(std::vector<std::vector<double>>(20, {1.0, 2.0, 3.0}));
    const auto m = fit_fire(data, 100, 50, kFireDefaultH, RngSpec{1, 0});
    const auto r = score_fire(data, m);
    for (double s : r.scores) CHECK(s == 0.0);
    for (double nb : r.neighborhoods) CHECK(nb == 1.0);
}

TEST_CASE("bucket-table scores equal the pairwise oracle") {
    const auto data = random_matrix(120, 4, 2);
    const auto m = fit_fire(data, 20, 3, 1017881, RngSpec{9, 0});
    const auto r = score_fire(data, m);
    const auto oracle = pairwise_scores(data, m);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        CHECK(r.scores[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
    }
    for (const auto& table : r.bucket_tables) {
        std::size_t total = 0;
        for (const auto& [id, count] : table) total += count;
        CHECK(total == data.rows());
    }
}

TEST_CASE("far point outranks a tight cluster in 1-D") {
    std::vector<std::vector<double>> rows(9, {0.0});
    rows.push_back({100.0});
    const auto data = DataMatrix::from_rows(rows);
    const auto m = fit_fire(data, 100, 50, kFireDefaultH, RngSpec{7, 0});
    const auto r = score_fire(data, m);
    const auto oracle = pairwise_scores(data, m);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(r.scores[9] >= r.scores[i]);
        CHECK(r.scores[i] == doctest::Approx(oracle[i]));
    }
}

TEST_CASE("scores are bounded by 2 L ln N and permutation-equivariant") {
    const auto data = random_matrix(60, 3, 3);
    const auto m = fit_fire(data, 15, 10, kFireDefaultH, RngSpec{2, 0});
    const auto r = score_fire(data, m);
    const double bound = 2.0 * 15 * std::log(60.0);
    for (double s : r.scores) CHECK(s <= bound * (1 + 1e-12));

    std::vector<std::size_t> perm(60);
    for (std::size_t i = 0; i < 60; ++i) perm[i] = (i * 7) % 60;
    const auto shuffled = data.select_rows(perm);
    const auto r2 = score_fire(shuffled, m);
    for (std::size_t i = 0; i < 60; ++i) CHECK(r2.scores[i] == doctest::Approx(r.scores[perm[i]]).epsilon(1e-12));
}

TEST_CASE("adding a duplicate never raises the duplicated row's score") {
    const auto data = random_matrix(40, 2, 4);
    const auto m = fit_fire(data, 20, 6, kFireDefaultH, RngSpec{4, 0});
    const auto before = score_fire(data, m).scores;
    std::vector<std::size_t> idx(41);
    for (std::size_t i = 0; i < 40; ++i) idx[i] = i;
    idx[40] = 5;
    const auto after = score_fire(data.select_rows(idx), m).scores;
    // N grows too, so compare bucket counts rather than the score directly
    for (std::size_t l = 0; l < m.L; ++l) {
        const auto a = sketch_indices(m, l, data);
        const auto b = sketch_indices(m, l, data.select_rows(idx));
        CHECK(std::count(b.begin(), b.end(), b[5]) >= std::count(a.begin(), a.end(), a[5]));
    }
    CHECK(after[5] <= before[5] + 2.0 * 20 * std::log(41.0 / 40.0) + 1e-9);
}

TEST_CASE("dimension mismatch is rejected") {
    const auto data = random_matrix(10, 3, 5);
    const auto m = fit_fire(data, 2, 2, kFireDefaultH, {});
    CHECK_THROWS_AS(score_fire(random_matrix(10, 2, 5), m), DataError);
}

TEST_CASE("IQR thresholding with type-7 quantiles") {
    const std::vector<double> s{1, 2, 3, 4, 100};
    const auto r = iqr_threshold(s);
    CHECK(r.q1 == 2.0);
    CHECK(r.q3 == 4.0);
    CHECK(r.threshold == 7.0);
    CHECK(r.rare_flags == std::vector<bool>{false, false, false, false, true});

    const auto eq = iqr_threshold(std::vector<double>{3.0, 3.0, 3.0});
    CHECK(eq.threshold == 3.0);
    CHECK(eq.rare_flags == std::vector<bool>{true, true, true});

    const auto one = iqr_threshold(std::vector<double>{5.0});
    CHECK(one.q1 == 5.0);
    CHECK(one.q3 == 5.0);
    CHECK(one.rare_flags == std::vector<bool>{true});
    CHECK_THROWS_AS(iqr_threshold(std::vector<double>{}), InvalidArgument);

    const std::vector<double> sorted{10, 20, 30, 40};
    CHECK(quantile_sorted(sorted, 0.25) == 17.5);
    CHECK(quantile_sorted(sorted, 1.0) == 40.0);
}

TEST_CASE("binary F1") {
    CHECK(f1_binary({true, false, true}, {true, false, true}) == 1.0);
    CHECK(f1_binary({false, false}, {true, false}) == 0.0);
    // TP=2, FP=1, FN=1
    CHECK(f1_binary({true, true, true, false}, {true, true, false, true}) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(f1_binary({true}, {true, false}), InvalidArgument);
}
