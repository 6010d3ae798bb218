#include "firehash/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "firehash/error.hpp"

namespace firehash {

RankedScores::RankedScores(std::vector<double> scores, std::vector<bool> is_outlier)
    : scores_(std::move(scores)), is_outlier_(std::move(is_outlier)) {
    if (scores_.size() != is_outlier_.size()) {
        throw InvalidArgument("score and label counts differ");
    }
    if (scores_.empty()) {
        throw InvalidArgument("cannot rank an empty score vector");
    }
    for (double s : scores_) {
        if (std::isnan(s)) {
            throw DataError("scores must not be NaN");
        }
    }
    order_.resize(scores_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return scores_[a] > scores_[b]; });
    ranks_.resize(scores_.size());
    for (std::size_t r = 0; r < order_.size(); ++r) {
        ranks_[order_[r]] = r + 1;
    }
    outliers_ = static_cast<std::size_t>(std::count(is_outlier_.begin(), is_outlier_.end(), true));
}

namespace {

void require_outliers(const RankedScores& ranked) {
    if (ranked.outlier_count() == 0) {
        throw InvalidArgument("metric undefined without outliers");
    }
}

std::size_t outliers_in_top(const RankedScores& ranked, std::size_t n) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (ranked.is_outlier()[ranked.order()[r]]) ++hits;
    }
    return hits;
}

}  // namespace

double adjust_for_chance(double value, std::size_t outliers, std::size_t n) {
    if (outliers == n) {
        throw InvalidArgument("chance adjustment undefined when every point is an outlier");
    }
    const double chance = static_cast<double>(outliers) / static_cast<double>(n);
    return (value - chance) / (1.0 - chance);
}

double precision_at_n(const RankedScores& ranked, std::optional<std::size_t> n) {
    require_outliers(ranked);
    const std::size_t top = n.value_or(ranked.outlier_count());
    if (top < 1 || top > ranked.size()) {
        throw InvalidArgument("P@n requires 1 <= n <= N");
    }
    return static_cast<double>(outliers_in_top(ranked, top)) / static_cast<double>(top);
}

double adjusted_precision_at_n(const RankedScores& ranked, std::optional<std::size_t> n) {
    return adjust_for_chance(precision_at_n(ranked, n), ranked.outlier_count(), ranked.size());
}

double average_precision(const RankedScores& ranked) {
    require_outliers(ranked);
    // outliers_up_to[r] = outliers among ranks 1..r
    std::vector<std::size_t> outliers_up_to(ranked.size() + 1, 0);
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        outliers_up_to[r + 1] = outliers_up_to[r] + (ranked.is_outlier()[ranked.order()[r]] ? 1 : 0);
    }
    // summed in row order
    double sum = 0.0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (ranked.is_outlier()[i]) {
            const std::size_t rank = ranked.ranks()[i];
            sum += static_cast<double>(outliers_up_to[rank]) / static_cast<double>(rank);
        }
    }
    return sum / static_cast<double>(ranked.outlier_count());
}

double adjusted_average_precision(const RankedScores& ranked) {
    return adjust_for_chance(average_precision(ranked), ranked.outlier_count(), ranked.size());
}

double roc_auc(const RankedScores& ranked) {
    const std::size_t n_out = ranked.outlier_count();
    const std::size_t n_in = ranked.inlier_count();
    if (n_out == 0 || n_in == 0) {
        throw InvalidArgument("ROC-AUC needs both outliers and inliers");
    }
    // ascending order; ties share the mid-rank. Everything is kept doubled so the
    // numerator is an exact integer.
    const auto& scores = ranked.scores();
    std::vector<std::size_t> asc(ranked.size());
    std::iota(asc.begin(), asc.end(), std::size_t{0});
    std::sort(asc.begin(), asc.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    std::uint64_t doubled_rank_sum = 0;
    std::size_t i = 0;
    while (i < asc.size()) {
        std::size_t j = i;
        while (j + 1 < asc.size() && scores[asc[j + 1]] == scores[asc[i]]) ++j;
        // ranks i+1..j+1, doubled mid-rank = i + j + 2
        const std::uint64_t doubled_mid = i + j + 2;
        for (std::size_t k = i; k <= j; ++k) {
            if (ranked.is_outlier()[asc[k]]) doubled_rank_sum += doubled_mid;
        }
        i = j + 1;
    }
    const std::uint64_t doubled_u = doubled_rank_sum - static_cast<std::uint64_t>(n_out) * (n_out + 1);
    return static_cast<double>(doubled_u) / (2.0 * static_cast<double>(n_out) * static_cast<double>(n_in));
}

double ConfusionCounts::tpr() const {
    return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double ConfusionCounts::fpr() const {
    return fp + tn == 0 ? 0.0 : static_cast<double>(fp) / static_cast<double>(fp + tn);
}

double ConfusionCounts::precision() const {
    return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

ConfusionCounts confusion(const std::vector<bool>& predicted, const std::vector<bool>& truth) {
    if (predicted.size() != truth.size()) {
        throw InvalidArgument("prediction and label lengths differ");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predicted[i]) {
            truth[i] ? ++c.tp : ++c.fp;
        } else {
            truth[i] ? ++c.fn : ++c.tn;
        }
    }
    return c;
}

OutlierEvalReport evaluate_outlier_scores(const RankedScores& ranked, std::optional<std::size_t> n) {
    OutlierEvalReport report;
    report.n_samples = ranked.size();
    report.n_outliers = ranked.outlier_count();
    report.top_n = n.value_or(ranked.outlier_count());
    report.precision_at_n = precision_at_n(ranked, n);
    report.average_precision = average_precision(ranked);
    if (ranked.outlier_count() < ranked.size()) {
        report.adjusted_precision_at_n = adjusted_precision_at_n(ranked, n);
        report.adjusted_average_precision = adjusted_average_precision(ranked);
        report.roc_auc = roc_auc(ranked);
    } else {
        report.adjusted_precision_at_n = std::numeric_limits<double>::quiet_NaN();
        report.adjusted_average_precision = std::numeric_limits<double>::quiet_NaN();
        report.roc_auc = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

std::vector<std::optional<double>> dataset_ranks(const MethodMeasureTable& table, std::size_t dataset) {
    if (dataset >= table.datasets.size()) {
        throw InvalidArgument("dataset index out of range");
    }
    std::vector<std::size_t> present;
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
        const auto& v = table.values.at(m).at(dataset);
        if (v) {
            if (!std::isfinite(*v)) {
                throw DataError("non-finite measure for method '" + table.methods[m] + "'");
            }
            present.push_back(m);
        }
    }
    std::vector<std::optional<double>> ranks(table.methods.size());
    if (present.empty()) {
        return ranks;
    }
    auto value = [&](std::size_t m) { return *table.values[m][dataset]; };
    std::stable_sort(present.begin(), present.end(), [&](std::size_t a, std::size_t b) {
        return table.higher_is_better ? value(a) > value(b) : value(a) < value(b);
    });
    std::size_t i = 0;
    while (i < present.size()) {
        std::size_t j = i;
        while (j + 1 < present.size() && value(present[j + 1]) == value(present[i])) ++j;
        const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[present[k]] = mean_rank;
        }
        i = j + 1;
    }
    return ranks;
}

std::vector<std::optional<double>> friedman_ranks(const MethodMeasureTable& table) {
    if (table.methods.empty() || table.datasets.empty()) {
        throw InvalidArgument("Friedman ranking of an empty table");
    }
    if (table.values.size() != table.methods.size()) {
        throw InvalidArgument("value rows do not match method count");
    }
    for (const auto& row : table.values) {
        if (row.size() != table.datasets.size()) {
            throw InvalidArgument("value columns do not match dataset count");
        }
    }
    std::vector<double> sums(table.methods.size(), 0.0);
    std::vector<std::size_t> counts(table.methods.size(), 0);
    for (std::size_t d = 0; d < table.datasets.size(); ++d) {
        const auto ranks = dataset_ranks(table, d);
        if (std::none_of(ranks.begin(), ranks.end(), [](const auto& r) { return r.has_value(); })) {
            throw DataError("dataset '" + table.datasets[d] + "' has no method values");
        }
        for (std::size_t m = 0; m < ranks.size(); ++m) {
            if (ranks[m]) {
                sums[m] += *ranks[m];
                ++counts[m];
            }
        }
    }
    std::vector<std::optional<double>> mean(table.methods.size());
    for (std::size_t m = 0; m < mean.size(); ++m) {
        if (counts[m]) {
            mean[m] = sums[m] / static_cast<double>(counts[m]);
        }
    }
    return mean;
}

}  // namespace firehash
