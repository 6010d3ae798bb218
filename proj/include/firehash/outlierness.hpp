#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "firehash/data.hpp"

namespace firehash {

struct OScoreConfig {
    /// Number of smallest/largest inlier distances averaged.
    std::size_t phi = 10;
};

/// Ratio of the mean of the phi_eff smallest to the mean of the phi_eff largest
/// Euclidean distances from `outlier` to the inlier rows of `data`, where
/// phi_eff = max(1, min(phi, floor(|I| / 2))).
///
/// Near 1 for a point far from everything (global), small for a point that
/// sits next to some inliers but far from others (local).
double o_score(std::span<const double> outlier, const DataMatrix& data,
               std::span<const std::size_t> inlier_rows, const OScoreConfig& config = {});

/// Same as above with an explicit list of distances (used by tests and callers
/// that already hold them).
double o_score_from_distances(std::vector<double> distances, const OScoreConfig& config = {});

std::size_t effective_phi(std::size_t phi, std::size_t inlier_count);

struct OScoreHistogram {
    std::vector<double> bin_edges;  // 21 ascending edges
    std::vector<std::size_t> counts;  // 20 bins
    std::vector<std::size_t> outlier_rows;
    std::vector<double> outlier_scores;
};

inline constexpr std::size_t kOScoreBins = 20;

/// o-score of every labelled outlier against all inliers, binned into 20
/// equal-width bins over [min, max]. Identical scores widen the span by a few
/// ulps so every count lands in bin 0.
OScoreHistogram oscore_histogram(const DataMatrix& data, const LabelVector& labels,
                                 const OScoreConfig& config = {});

/// Bins already computed o-scores (exposed for testing the edge rules).
OScoreHistogram histogram_of(std::span<const double> scores);

}  // namespace firehash
