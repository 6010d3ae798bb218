#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace firehash {

/// Dense row-major N x d sample matrix with per-feature ranges.
///
/// Construction validates that every value is finite and that the shape is
/// non-empty; the min/max vectors are computed once and never change.
class DataMatrix {
public:
    DataMatrix() = default;
    DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    /// Builds a matrix from nested rows; all rows must have equal length.
    static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& feature_mins() const noexcept { return mins_; }
    const std::vector<double>& feature_maxs() const noexcept { return maxs_; }

    /// Rows selected by index, in the given order.
    DataMatrix select_rows(std::span<const std::size_t> indices) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
    std::vector<double> mins_;
    std::vector<double> maxs_;
};

enum class LabelKind { OutlierBinary, ClassLabel };

/// Ordered set of class labels in first-seen order.
class ClassRegistry {
public:
    /// Index of `label`, registering it if new.
    std::size_t intern(std::string_view label);
    std::optional<std::size_t> find(std::string_view label) const;

    const std::string& label(std::size_t index) const { return labels_.at(index); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }

private:
    std::vector<std::string> labels_;
};

/// Per-row labels: either outlier flags or class ids into a registry.
struct LabelVector {
    LabelKind kind = LabelKind::OutlierBinary;
    /// Outlier-binary: 1 = outlier, 0 = inlier. Class-label: index into `registry`.
    std::vector<std::size_t> values;
    ClassRegistry registry;

    std::size_t size() const noexcept { return values.size(); }

    static LabelVector outlier_flags(std::vector<bool> flags);

    /// Requires kind == OutlierBinary.
    std::vector<bool> outlier_mask() const;
    std::size_t outlier_count() const;
};

}  // namespace firehash
