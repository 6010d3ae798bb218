#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "firehash/data.hpp"
#include "firehash/fire.hpp"
#include "firehash/hashing.hpp"
#include "firehash/rng.hpp"

namespace firehash {

inline constexpr std::size_t kFire1DefaultL = 100;
inline constexpr double kFire1DefaultBinWidth = 0.1;

using ProjectionTable = std::unordered_map<std::int64_t, std::size_t>;

/// Fitted FiRE.1 model: projection estimators plus the training-set bucket
/// occupancy of each, needed to score unseen points.
struct ProjectionEnsemble {
    std::vector<ProjectionEstimator> estimators;
    std::vector<ProjectionTable> bucket_tables;
    std::size_t L = 0;
    std::size_t M = 0;
    double bin_width = 0.0;
    RngSpec rng;
    std::size_t trained_n = 0;
    std::size_t dims = 0;

    bool operator==(const ProjectionEnsemble&) const = default;
};

using Fire1ScoreReport = DensityScoreReport;

/// The M grid used for tuning: ceil(log d), ceil(sqrt d), ceil(d/2), d, ceil(1.5 d),
/// deduplicated and clamped to >= 1.
std::vector<std::size_t> subspace_size_grid(std::size_t d);

/// The bin-width tuning grid {10, 9, ..., 1, 1e-1, ..., 1e-6}.
std::vector<double> bin_width_grid();

ProjectionEnsemble fit_fire1(const DataMatrix& data, std::size_t L, std::size_t M, double bin_width,
                             const RngSpec& rng);

std::vector<std::int64_t> projection_indices(const ProjectionEnsemble& ensemble, std::size_t l,
                                             const DataMatrix& data);

/// Density scores of `data` against its own bucket occupancy (the training-set pass).
Fire1ScoreReport score_fire1(const DataMatrix& data, const ProjectionEnsemble& ensemble);

/// Scores new points against the stored training occupancy with the smoothed
/// neighborhood (1 + k) / (1 + N). Does not modify the ensemble.
std::vector<double> score_unseen(const ProjectionEnsemble& ensemble, const DataMatrix& new_data);

}  // namespace firehash
