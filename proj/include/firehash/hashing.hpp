#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "firehash/data.hpp"
#include "firehash/rng.hpp"

namespace firehash {

/// Largest integer weight drawn for a sketch bit (2^31 - 1).
inline constexpr std::uint64_t kMaxSketchWeight = 2147483647ULL;

/// Thresholded-bit sketch over M sampled features.
///
/// Bit j is set when row[feature_indices[j]] >= thresholds[j]; the bucket id is
/// the weighted bit sum modulo `modulus`.
struct SketchEstimator {
    std::vector<std::size_t> feature_indices;
    std::vector<double> thresholds;
    std::vector<std::uint64_t> int_weights;
    std::uint64_t modulus = 2;

    std::size_t size() const noexcept { return feature_indices.size(); }
    bool operator==(const SketchEstimator&) const = default;
};

/// Quantized random projection: floor((sum_j row[idx_j] * w_j + bias) / bin_width).
struct ProjectionEstimator {
    std::vector<std::size_t> feature_indices;
    std::vector<double> weights;
    double bias = 0.0;
    double bin_width = 1.0;

    std::size_t size() const noexcept { return feature_indices.size(); }
    bool operator==(const ProjectionEstimator&) const = default;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// Samples M features with replacement, thresholds uniform within each sampled
/// feature's [min, max], and weights uniform in [1, kMaxSketchWeight].
SketchEstimator draw_sketch_estimator(Rng& rng, std::span<const double> feature_mins,
                                      std::span<const double> feature_maxs, std::size_t m,
                                      std::uint64_t modulus);

/// FiRE.1 family: M features with replacement, weights uniform within each
/// sampled feature's range, bias uniform in [-bin_width, bin_width].
ProjectionEstimator draw_subspace_projection(Rng& rng, std::span<const double> feature_mins,
                                             std::span<const double> feature_maxs, std::size_t m,
                                             double bin_width);

/// Enhash family: all d features, standard-normal weights, bias uniform in
/// [-bin_width, bin_width].
ProjectionEstimator draw_gaussian_projection(Rng& rng, std::size_t d, double bin_width);

/// Bucket id in [0, modulus); reduction is applied after every accumulation.
std::uint64_t sketch_index(const SketchEstimator& est, std::span<const double> row);

/// The projected scalar sum_j row[idx_j] * w_j, accumulated in ascending j.
double projection_value(const ProjectionEstimator& est, std::span<const double> row);

/// Bucket id for a projected scalar; throws DataError if the quotient is not
/// representable as a signed 64-bit id.
std::int64_t quantize(double projected, double bias, double bin_width);

/// Mathematical floor of (projection + bias) / bin_width.
std::int64_t projection_index(const ProjectionEstimator& est, std::span<const double> row);

}  // namespace firehash
