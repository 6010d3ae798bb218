#include "firehash/rng.hpp"

#include <cmath>
#include <limits>

#include "firehash/error.hpp"

namespace firehash {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_seed(const RngSpec& spec, std::uint64_t index) noexcept {
    return mix64(mix64(mix64(spec.master_seed) ^ spec.stream_id) ^ index);
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    if (lo == hi) {
        return lo;
    }
    double v = lo + (hi - lo) * uniform01();
    // rounding can land exactly on hi or slightly outside; clamp to the closed range
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    return v;
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) {
        throw InvalidArgument("uniform_int: empty range");
    }
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) {
        return engine_();
    }
    const std::uint64_t range = span + 1;
    // rejection sampling on the largest multiple of range
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t draw = engine_();
    while (draw >= limit) {
        draw = engine_();
    }
    return lo + draw % range;
}

std::size_t Rng::index(std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("Rng::index: n must be positive");
    }
    return static_cast<std::size_t>(uniform_int(0, n - 1));
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

}  // namespace firehash
