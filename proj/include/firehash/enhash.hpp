#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "firehash/data.hpp"
#include "firehash/hashing.hpp"
#include "firehash/rng.hpp"
#include "firehash/streams.hpp"

namespace firehash {

/// Floor applied to sample-to-class-mean distances.
inline constexpr double kEnhashDistanceFloor = 1e-12;

enum class EnhashVariant {
    Full,
    /// No forgetting (lambda forced to 0).
    Lambda0,
    /// Class weights not divided by the distance to the class mean; remaining
    /// ties are broken by a seeded draw instead of class order.
    NoWeights,
};

struct EnhashParams {
    std::size_t L = 10;
    double bin_width = 0.1;
    double lambda = 0.015;
    RngSpec rng;
    EnhashVariant variant = EnhashVariant::Full;

    /// Throws InvalidArgument when a field violates its range.
    void validate() const;
    double effective_lambda() const { return variant == EnhashVariant::Lambda0 ? 0.0 : lambda; }
};

/// 2^(-lambda * dt); exactly 1 when lambda or dt is 0.
double decay_multiplier(double lambda, std::uint64_t dt);

/// Statistics of one class inside one bucket.
struct ClassCell {
    std::size_t class_index = 0;
    /// Decayed, bucket-normalized weight.
    double count = 0.0;
    std::uint64_t tstamp = 0;
    std::uint64_t samples = 0;
    std::vector<double> sum;
};

struct Bucket {
    std::vector<ClassCell> cells;
    /// max over cells of tstamp
    std::uint64_t last_update = 0;

    const ClassCell* find(std::size_t class_index) const;
    ClassCell* find(std::size_t class_index);
};

struct EnhashEstimatorState {
    ProjectionEstimator hash;
    std::unordered_map<std::int64_t, Bucket> buckets;
};

struct EnhashPrediction {
    /// nullopt when the model has not seen any class yet.
    std::optional<std::size_t> class_index;
    /// Accumulated log-weight per registered class.
    std::vector<double> cweights;
    /// Decay multiplier applied by each estimator whose bucket was non-empty.
    std::vector<double> decay_factors;
};

/// What one update did in each estimator; used by invariant checks.
struct EnhashUpdateTrace {
    std::vector<std::int64_t> buckets;
    std::vector<double> decay_factors;
    /// Sum of class weights in the updated bucket after normalization.
    std::vector<double> weight_sums;
};

/// Streaming hash-ensemble classifier with decayed per-bucket class weights.
class EnhashModel {
public:
    EnhashModel(const EnhashParams& params, std::size_t dims);

    /// Class weights and prediction for `x` from the current state.
    EnhashPrediction predict(std::span<const double> x) const;

    /// Adds (x, label) to every estimator at the current time; does not advance time.
    EnhashUpdateTrace update(std::span<const double> x, std::string_view label);
    EnhashUpdateTrace update(std::span<const double> x, std::size_t class_index);

    /// Predict from the pre-update state, update, then advance time by one.
    /// `trace`, when given, receives what the update did.
    EnhashPrediction step(std::span<const double> x, std::string_view label,
                          EnhashUpdateTrace* trace = nullptr);

    std::uint64_t time() const noexcept { return t_; }
    std::size_t dims() const noexcept { return dims_; }
    const EnhashParams& params() const noexcept { return params_; }
    const ClassRegistry& classes() const noexcept { return classes_; }
    const std::vector<EnhashEstimatorState>& estimators() const noexcept { return estimators_; }

    /// Label of a prediction, or nullopt for the no-knowledge outcome.
    std::optional<std::string> label_of(const EnhashPrediction& p) const;

private:
    void check_dims(std::span<const double> x) const;
    std::size_t break_tie(const std::vector<std::size_t>& tied) const;

    EnhashParams params_;
    std::size_t dims_;
    std::vector<EnhashEstimatorState> estimators_;
    ClassRegistry classes_;
    std::uint64_t t_ = 0;
    std::uint64_t tie_seed_ = 0;
};

/// Error/kappa summary of an interleaved test-then-train run.
struct PrequentialReport {
    std::size_t samples = 0;
    std::size_t mistakes = 0;
    double error = 0.0;
    double accuracy = 0.0;
    double majority_accuracy = 0.0;
    double persistence_accuracy = 0.0;
    std::optional<double> kappa_m;
    std::optional<double> kappa_t;
    double wall_seconds = 0.0;
    std::size_t window = 0;
    /// error over the trailing `window` samples after each step (empty when window = 0)
    std::vector<double> windowed_error;
    /// per-step correctness, in arrival order
    std::vector<bool> correct;
};

/// Accuracy/kappa arithmetic from per-step outcomes and true labels.
PrequentialReport summarize_prequential(const std::vector<bool>& correct,
                                        const std::vector<std::string>& labels, std::size_t window);

/// Trailing-window error series.
std::vector<double> windowed_error(const std::vector<bool>& correct, std::size_t window);

/// Runs Enhash over the stream predicting each sample before training on it.
PrequentialReport prequential_evaluate(const EnhashParams& params, SampleStream& stream,
                                       std::size_t window = 0);

std::optional<EnhashVariant> parse_enhash_variant(const std::string& name);
std::string to_string(EnhashVariant variant);

}  // namespace firehash
