#include "firehash/hashing.hpp"

#include <cmath>
#include <string>

#include "firehash/error.hpp"

namespace firehash {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

void check_ranges(std::span<const double> mins, std::span<const double> maxs) {
    if (mins.empty() || mins.size() != maxs.size()) {
        throw InvalidArgument("feature ranges must be non-empty and of equal length");
    }
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // these bases are a deterministic witness set for n < 2^64
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

SketchEstimator draw_sketch_estimator(Rng& rng, std::span<const double> feature_mins,
                                      std::span<const double> feature_maxs, std::size_t m,
                                      std::uint64_t modulus) {
    check_ranges(feature_mins, feature_maxs);
    if (m == 0) {
        throw InvalidArgument("sketch size M must be at least 1");
    }
    if (!is_prime(modulus) || modulus >= (1ULL << 63)) {
        throw InvalidArgument("hash modulus H=" + std::to_string(modulus) +
                              " must be a prime in (1, 2^63)");
    }
    SketchEstimator est;
    est.modulus = modulus;
    est.feature_indices.reserve(m);
    est.thresholds.reserve(m);
    est.int_weights.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t f = rng.index(feature_mins.size());
        est.feature_indices.push_back(f);
        est.thresholds.push_back(rng.uniform(feature_mins[f], feature_maxs[f]));
        est.int_weights.push_back(rng.uniform_int(1, kMaxSketchWeight));
    }
    return est;
}

ProjectionEstimator draw_subspace_projection(Rng& rng, std::span<const double> feature_mins,
                                             std::span<const double> feature_maxs, std::size_t m,
                                             double bin_width) {
    check_ranges(feature_mins, feature_maxs);
    if (m == 0) {
        throw InvalidArgument("subspace size M must be at least 1");
    }
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw InvalidArgument("bin width must be a positive finite number");
    }
    ProjectionEstimator est;
    est.bin_width = bin_width;
    est.feature_indices.reserve(m);
    est.weights.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t f = rng.index(feature_mins.size());
        est.feature_indices.push_back(f);
        est.weights.push_back(rng.uniform(feature_mins[f], feature_maxs[f]));
    }
    est.bias = rng.uniform(-bin_width, bin_width);
    return est;
}

ProjectionEstimator draw_gaussian_projection(Rng& rng, std::size_t d, double bin_width) {
    if (d == 0) {
        throw InvalidArgument("projection dimension must be at least 1");
    }
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw InvalidArgument("bin width must be a positive finite number");
    }
    ProjectionEstimator est;
    est.bin_width = bin_width;
    est.feature_indices.resize(d);
    est.weights.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        est.feature_indices[j] = j;
        est.weights[j] = rng.normal();
    }
    est.bias = rng.uniform(-bin_width, bin_width);
    return est;
}

std::uint64_t sketch_index(const SketchEstimator& est, std::span<const double> row) {
    const std::uint64_t h = est.modulus;
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < est.feature_indices.size(); ++j) {
        if (row[est.feature_indices[j]] >= est.thresholds[j]) {
            // acc < h and w % h < h, so the sum fits whenever h < 2^63
            acc = (acc + est.int_weights[j] % h) % h;
        }
    }
    return acc;
}

double projection_value(const ProjectionEstimator& est, std::span<const double> row) {
    double sum = 0.0;
    for (std::size_t j = 0; j < est.feature_indices.size(); ++j) {
        sum += row[est.feature_indices[j]] * est.weights[j];
    }
    return sum;
}

std::int64_t quantize(double projected, double bias, double bin_width) {
    const double q = std::floor((projected + bias) / bin_width);
    // 2^63 is exactly representable; anything at or beyond it cannot be an id
    if (!std::isfinite(q) || q >= 0x1.0p63 || q < -0x1.0p63) {
        throw DataError("projected bucket id out of the signed 64-bit range; bin width too small "
                        "for the data scale");
    }
    return static_cast<std::int64_t>(q);
}

std::int64_t projection_index(const ProjectionEstimator& est, std::span<const double> row) {
    return quantize(projection_value(est, row), est.bias, est.bin_width);
}

}  // namespace firehash
