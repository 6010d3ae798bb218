#include <doctest.h>

#include <cmath>

#include "firehash/error.hpp"
#include "firehash/outlierness.hpp"

using namespace firehash;

TEST_CASE("o-score arithmetic") {
    std::vector<double> d;
    for (int i = 1; i <= 20; ++i) d.push_back(i);
    CHECK(o_score_from_distances(d) == doctest::Approx(5.5 / 15.5));
    CHECK(o_score_from_distances({3.0, 3.0, 3.0, 3.0}) == 1.0);
    CHECK(o_score_from_distances({2.0, 4.0, 8.0}, OScoreConfig{10}) == 0.25);
    CHECK(effective_phi(10, 3) == 1);
    CHECK(effective_phi(10, 1) == 1);
    CHECK(effective_phi(10, 100) == 10);
    CHECK(effective_phi(4, 9) == 4);
    CHECK_THROWS_AS(o_score_from_distances({}), InvalidArgument);
    CHECK_THROWS_AS(o_score_from_distances({0.0, 0.0}), DataError);
}

TEST_CASE("o-score from data") {
    // outlier at the origin, inliers on the unit circle
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < 8; ++k) rows.push_back({std::cos(k * 0.785398), std::sin(k * 0.785398)});
    rows.push_back({0.0, 0.0});
    const auto data = DataMatrix::from_rows(rows);
    std::vector<std::size_t> inliers{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(o_score(data.row(8), data, inliers) == doctest::Approx(1.0));
}

TEST_CASE("histogram edges and degenerate widening") {
    const auto h = histogram_of(std::vector<double>{0.1, 0.9});
    REQUIRE(h.bin_edges.size() == 21);
    REQUIRE(h.counts.size() == 20);
    CHECK(h.bin_edges.front() == 0.1);
    CHECK(h.bin_edges.back() == 0.9);
    CHECK(h.counts[0] == 1);
    CHECK(h.counts[19] == 1);

    const auto one = histogram_of(std::vector<double>{0.4});
    CHECK(one.counts[0] == 1);
    for (std::size_t b = 1; b < 20; ++b) CHECK(one.counts[b] == 0);
    CHECK(one.bin_edges.back() > one.bin_edges.front());
}

TEST_CASE("histogram over labelled data") {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 30; ++i) rows.push_back({i * 0.01, 0.0});
    for (int i = 0; i < 30; ++i) rows.push_back({5.0 + i * 0.01, 0.0});
    rows.push_back({0.35, 0.05});   // next to the first group
    rows.push_back({100.0, 100.0});  // far from everything
    const auto data = DataMatrix::from_rows(rows);
    std::vector<bool> flags(62, false);
    flags[60] = flags[61] = true;
    const auto h = oscore_histogram(data, LabelVector::outlier_flags(flags));
    REQUIRE(h.outlier_rows == std::vector<std::size_t>{60, 61});
    CHECK(h.outlier_scores[0] < 0.1);
    CHECK(h.outlier_scores[1] > 0.9);
    CHECK(h.counts.front() == 1);
    CHECK(h.counts.back() == 1);

    CHECK_THROWS_AS(oscore_histogram(data, LabelVector::outlier_flags(std::vector<bool>(62, false))), DataError);
    CHECK_THROWS_AS(oscore_histogram(data, LabelVector::outlier_flags(std::vector<bool>(62, true))), DataError);
}
