#include "firehash/outlierness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "firehash/error.hpp"

namespace firehash {

std::size_t effective_phi(std::size_t phi, std::size_t inlier_count) {
    if (phi == 0) {
        throw InvalidArgument("phi must be at least 1");
    }
    return std::max<std::size_t>(1, std::min(phi, inlier_count / 2));
}

double o_score_from_distances(std::vector<double> distances, const OScoreConfig& config) {
    if (distances.empty()) {
        throw InvalidArgument("o-score needs at least one inlier");
    }
    const std::size_t k = effective_phi(config.phi, distances.size());
    std::sort(distances.begin(), distances.end());
    double low = 0.0;
    double high = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        low += distances[i];
        high += distances[distances.size() - 1 - i];
    }
    if (high == 0.0) {
        throw DataError("o-score undefined: outlier coincides with every inlier");
    }
    return (low / static_cast<double>(k)) / (high / static_cast<double>(k));
}

double o_score(std::span<const double> outlier, const DataMatrix& data,
               std::span<const std::size_t> inlier_rows, const OScoreConfig& config) {
    if (outlier.size() != data.cols()) {
        throw DataError("outlier dimension does not match data");
    }
    std::vector<double> distances;
    distances.reserve(inlier_rows.size());
    for (std::size_t r : inlier_rows) {
        const auto row = data.row(r);
        double sq = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double diff = outlier[j] - row[j];
            sq += diff * diff;
        }
        distances.push_back(std::sqrt(sq));
    }
    return o_score_from_distances(std::move(distances), config);
}

OScoreHistogram histogram_of(std::span<const double> scores) {
    if (scores.empty()) {
        throw InvalidArgument("histogram of an empty score set");
    }
    const auto [min_it, max_it] = std::minmax_element(scores.begin(), scores.end());
    double lo = *min_it;
    double hi = *max_it;
    if (hi == lo) {
        hi = lo + std::max(std::abs(lo), 1.0) * 32.0 * std::numeric_limits<double>::epsilon();
    }
    OScoreHistogram hist;
    hist.bin_edges.resize(kOScoreBins + 1);
    const double width = (hi - lo) / static_cast<double>(kOScoreBins);
    for (std::size_t b = 0; b <= kOScoreBins; ++b) {
        hist.bin_edges[b] = lo + width * static_cast<double>(b);
    }
    hist.bin_edges.back() = hi;
    hist.counts.assign(kOScoreBins, 0);
    for (double s : scores) {
        // last bin is closed on the right
        auto b = static_cast<std::size_t>((s - lo) / width);
        b = std::min(b, kOScoreBins - 1);
        while (b > 0 && s < hist.bin_edges[b]) --b;
        while (b + 1 < kOScoreBins && s >= hist.bin_edges[b + 1]) ++b;
        ++hist.counts[b];
    }
    hist.outlier_scores.assign(scores.begin(), scores.end());
    return hist;
}

OScoreHistogram oscore_histogram(const DataMatrix& data, const LabelVector& labels,
                                 const OScoreConfig& config) {
    if (labels.size() != data.rows()) {
        throw DataError("label count does not match row count");
    }
    const auto mask = labels.outlier_mask();
    std::vector<std::size_t> inliers;
    std::vector<std::size_t> outliers;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        (mask[i] ? outliers : inliers).push_back(i);
    }
    if (outliers.empty()) {
        throw DataError("o-score histogram needs at least one outlier");
    }
    if (inliers.empty()) {
        throw DataError("o-score histogram needs at least one inlier");
    }
    std::vector<double> scores;
    scores.reserve(outliers.size());
    for (std::size_t o : outliers) {
        scores.push_back(o_score(data.row(o), data, inliers, config));
    }
    auto hist = histogram_of(scores);
    hist.outlier_rows = std::move(outliers);
    return hist;
}

}  // namespace firehash
