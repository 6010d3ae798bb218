#pragma once

#include <cmath>
#include <cstddef>
#include <unordered_map>
#include <vector>

namespace firehash::detail {

/// Neumaier-compensated running sum. Keeps per-row log aggregates exact for the
/// degenerate cases (all terms 0, or all terms equal).
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <class Id>
using BucketTable = std::unordered_map<Id, std::size_t>;

template <class Id>
BucketTable<Id> count_buckets(const std::vector<Id>& ids) {
    BucketTable<Id> table;
    table.reserve(ids.size());
    for (const Id& id : ids) {
        ++table[id];
    }
    return table;
}

/// -2 * sum of log terms, with +0.0 instead of -0.0 for an empty sum.
inline double finish_score(const CompensatedSum& log_sum) noexcept {
    return -2.0 * log_sum.value() + 0.0;
}

}  // namespace firehash::detail
