#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace firehash {

/// Scores paired with outlier labels and their 1-based descending ranks.
/// Equal scores are ordered by original index, so ranks are a permutation of 1..N.
class RankedScores {
public:
    RankedScores(std::vector<double> scores, std::vector<bool> is_outlier);

    std::size_t size() const noexcept { return scores_.size(); }
    std::size_t outlier_count() const noexcept { return outliers_; }
    std::size_t inlier_count() const noexcept { return size() - outliers_; }

    const std::vector<double>& scores() const noexcept { return scores_; }
    const std::vector<bool>& is_outlier() const noexcept { return is_outlier_; }
    /// ranks()[i] is the rank of row i.
    const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }
    /// order()[r - 1] is the row at rank r.
    const std::vector<std::size_t>& order() const noexcept { return order_; }

private:
    std::vector<double> scores_;
    std::vector<bool> is_outlier_;
    std::vector<std::size_t> ranks_;
    std::vector<std::size_t> order_;
    std::size_t outliers_ = 0;
};

/// Outliers among the top n, over n. n defaults to |O|.
double precision_at_n(const RankedScores& ranked, std::optional<std::size_t> n = std::nullopt);
double adjusted_precision_at_n(const RankedScores& ranked, std::optional<std::size_t> n = std::nullopt);
double average_precision(const RankedScores& ranked);
double adjusted_average_precision(const RankedScores& ranked);

/// Mean over (outlier, inlier) pairs of 1 / 0.5 / 0 for greater / tied / lower
/// score, computed from mid-rank sums in O(N log N).
double roc_auc(const RankedScores& ranked);

/// Chance adjustment (value - |O|/N) / (1 - |O|/N).
double adjust_for_chance(double value, std::size_t outliers, std::size_t n);

struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    double tpr() const;
    double fpr() const;
    double precision() const;
    double recall() const { return tpr(); }
};

ConfusionCounts confusion(const std::vector<bool>& predicted, const std::vector<bool>& truth);

struct OutlierEvalReport {
    std::size_t n_samples = 0;
    std::size_t n_outliers = 0;
    std::size_t top_n = 0;
    double precision_at_n = 0.0;
    double adjusted_precision_at_n = 0.0;
    double average_precision = 0.0;
    double adjusted_average_precision = 0.0;
    double roc_auc = 0.0;
};

/// All five ranking measures at once; adjusted values are NaN when |O| = N.
OutlierEvalReport evaluate_outlier_scores(const RankedScores& ranked,
                                          std::optional<std::size_t> n = std::nullopt);

/// One evaluation measure for several methods across several datasets.
struct MethodMeasureTable {
    std::vector<std::string> methods;
    std::vector<std::string> datasets;
    /// values[method][dataset]; nullopt marks a method that produced no result.
    std::vector<std::vector<std::optional<double>>> values;
    bool higher_is_better = true;
};

/// Ranks of the methods on one dataset column (best = 1, ties averaged,
/// missing entries stay nullopt).
std::vector<std::optional<double>> dataset_ranks(const MethodMeasureTable& table, std::size_t dataset);

/// Mean rank of each method over the datasets where it has a value.
std::vector<std::optional<double>> friedman_ranks(const MethodMeasureTable& table);

}  // namespace firehash
