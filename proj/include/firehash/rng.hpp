#pragma once

#include <cstdint>
#include <random>

namespace firehash {

/// Seed contract shared by every randomized component.
///
/// Estimator `l` of a model draws only from `substream(l)`, so estimators can be
/// built in any order (or concurrently) and still reproduce the same parameters.
struct RngSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    bool operator==(const RngSpec&) const = default;
};

/// Substream reserved for synthetic data generators, so generated data never
/// shares draws with a model fitted under the same RngSpec.
inline constexpr std::uint64_t kDataSubstream = 0xda7a5eedULL;

/// SplitMix64 finalizer; used to derive well-mixed substream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of substream `index`; a pure function of (master_seed, stream_id, index).
std::uint64_t substream_seed(const RngSpec& spec, std::uint64_t index) noexcept;

/// Random source for one substream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the standard.
/// The distribution transforms are implemented here rather than taken from
/// <random>, whose distributions are implementation-defined; this keeps draws
/// bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(const RngSpec& spec, std::uint64_t index) : engine_(substream_seed(spec, index)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform double in [lo, hi]; returns lo when lo == hi.
    double uniform(double lo, double hi);

    /// Uniform integer in [lo, hi] (inclusive), unbiased.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n);

    /// Standard normal via the Marsaglia polar method.
    double normal();

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace firehash
