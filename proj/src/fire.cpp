#include "firehash/fire.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "firehash/detail/density.hpp"
#include "firehash/error.hpp"

namespace firehash {

SketchEnsemble fit_fire(const DataMatrix& data, std::size_t L, std::size_t M, std::uint64_t H,
                        const RngSpec& rng) {
    if (data.empty()) {
        throw DataError("cannot fit on an empty matrix");
    }
    if (L == 0 || M == 0) {
        throw InvalidArgument("L and M must be at least 1");
    }
    if (!is_prime(H) || H >= (1ULL << 63)) {
        throw InvalidArgument("H=" + std::to_string(H) + " must be a prime in (1, 2^63)");
    }
    SketchEnsemble ensemble;
    ensemble.L = L;
    ensemble.M = M;
    ensemble.H = H;
    ensemble.rng = rng;
    ensemble.trained_n = data.rows();
    ensemble.dims = data.cols();
    ensemble.estimators.reserve(L);
    for (std::size_t l = 0; l < L; ++l) {
        Rng stream(rng, l);
        ensemble.estimators.push_back(
            draw_sketch_estimator(stream, data.feature_mins(), data.feature_maxs(), M, H));
    }
    return ensemble;
}

std::vector<std::uint64_t> sketch_indices(const SketchEnsemble& ensemble, std::size_t l,
                                          const DataMatrix& data) {
    const auto& est = ensemble.estimators.at(l);
    std::vector<std::uint64_t> ids(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        ids[i] = sketch_index(est, data.row(i));
    }
    return ids;
}

FireScoreReport score_fire(const DataMatrix& data, const SketchEnsemble& ensemble) {
    if (data.cols() != ensemble.dims) {
        throw DataError("data has " + std::to_string(data.cols()) + " columns, model was fitted on " +
                        std::to_string(ensemble.dims));
    }
    const std::size_t n = data.rows();
    const std::size_t L = ensemble.estimators.size();
    const double log_n = std::log(static_cast<double>(n));

    FireScoreReport report;
    report.L = L;
    report.neighborhoods.resize(n * L);
    report.bucket_tables.reserve(L);
    std::vector<detail::CompensatedSum> log_sums(n);

    for (std::size_t l = 0; l < L; ++l) {
        const auto ids = sketch_indices(ensemble, l, data);
        auto table = detail::count_buckets(ids);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t count = table.find(ids[i])->second;
            report.neighborhoods[i * L + l] = static_cast<double>(count) / static_cast<double>(n);
            log_sums[i].add(std::log(static_cast<double>(count)) - log_n);
        }
        report.bucket_tables.push_back(std::move(table));
    }

    report.scores.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        report.scores[i] = detail::finish_score(log_sums[i]);
    }
    return report;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw InvalidArgument("quantile of an empty sample");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

IqrResult iqr_threshold(std::span<const double> scores) {
    if (scores.empty()) {
        throw InvalidArgument("iqr_threshold needs at least one score");
    }
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());
    IqrResult result;
    result.q1 = quantile_sorted(sorted, 0.25);
    result.q3 = quantile_sorted(sorted, 0.75);
    result.threshold = result.q3 + 1.5 * (result.q3 - result.q1);
    result.rare_flags.resize(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        result.rare_flags[i] = scores[i] >= result.threshold;
    }
    return result;
}

double f1_binary(const std::vector<bool>& predicted, const std::vector<bool>& truth) {
    if (predicted.size() != truth.size()) {
        throw InvalidArgument("f1_binary: prediction and label lengths differ");
    }
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predicted[i] && truth[i]) ++tp;
        else if (predicted[i]) ++fp;
        else if (truth[i]) ++fn;
    }
    if (tp == 0) {
        return 0.0;
    }
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    return 2.0 * precision * recall / (precision + recall);
}

}  // namespace firehash
