#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "firehash/data.hpp"
#include "firehash/hashing.hpp"
#include "firehash/rng.hpp"

namespace firehash {

inline constexpr std::size_t kFireDefaultL = 100;
inline constexpr std::size_t kFireDefaultM = 50;
inline constexpr std::uint64_t kFireDefaultH = 1017881;

/// Fitted FiRE model: L sketch estimators sharing M and H.
struct SketchEnsemble {
    std::vector<SketchEstimator> estimators;
    std::size_t L = 0;
    std::size_t M = 0;
    std::uint64_t H = 0;
    RngSpec rng;
    std::size_t trained_n = 0;
    std::size_t dims = 0;

    bool operator==(const SketchEnsemble&) const = default;
};

/// Per-row scores plus the intermediate densities that produced them.
struct DensityScoreReport {
    std::vector<double> scores;
    /// Row-major N x L; entry (i, l) = occupants of row i's bucket under estimator l, over N.
    std::vector<double> neighborhoods;
    std::size_t L = 0;

    double neighborhood(std::size_t row, std::size_t estimator) const {
        return neighborhoods[row * L + estimator];
    }
};

struct FireScoreReport : DensityScoreReport {
    std::vector<std::unordered_map<std::uint64_t, std::size_t>> bucket_tables;
};

SketchEnsemble fit_fire(const DataMatrix& data, std::size_t L, std::size_t M, std::uint64_t H,
                        const RngSpec& rng);

/// Bucket ids of every row under estimator `l`.
std::vector<std::uint64_t> sketch_indices(const SketchEnsemble& ensemble, std::size_t l,
                                          const DataMatrix& data);

/// Sketches every row under each estimator, counts bucket occupancy and returns
/// score_i = -2 * sum_l ln(count_l(i) / N) (natural log).
FireScoreReport score_fire(const DataMatrix& data, const SketchEnsemble& ensemble);

struct IqrResult {
    double q1 = 0.0;
    double q3 = 0.0;
    double threshold = 0.0;
    std::vector<bool> rare_flags;
};

/// Linear-interpolation ("type 7") quantile of already sorted values.
double quantile_sorted(std::span<const double> sorted, double p);

/// Flags scores >= q3 + 1.5 * (q3 - q1).
IqrResult iqr_threshold(std::span<const double> scores);

/// F1 of the positive (outlier) class; 0 when precision + recall is 0.
double f1_binary(const std::vector<bool>& predicted, const std::vector<bool>& truth);

}  // namespace firehash
