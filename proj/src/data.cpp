#include "firehash/data.hpp"

#include <algorithm>
#include <cmath>

#include "firehash/error.hpp"

namespace firehash {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ == 0 || cols_ == 0) {
        throw DataError("data matrix must have at least one row and one column");
    }
    if (values_.size() != rows_ * cols_) {
        throw DataError("data matrix value count does not match its shape");
    }
    mins_.assign(cols_, 0.0);
    maxs_.assign(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            const double v = values_[i * cols_ + j];
            if (!std::isfinite(v)) {
                throw DataError("non-finite value at row " + std::to_string(i) + ", column " +
                                std::to_string(j));
            }
            if (i == 0 || v < mins_[j]) mins_[j] = v;
            if (i == 0 || v > maxs_[j]) maxs_[j] = v;
        }
    }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw DataError("data matrix must have at least one row");
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw DataError("ragged row " + std::to_string(i));
        }
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return DataMatrix(rows.size(), cols, std::move(values));
}

DataMatrix DataMatrix::select_rows(std::span<const std::size_t> indices) const {
    std::vector<double> values;
    values.reserve(indices.size() * cols_);
    for (std::size_t i : indices) {
        if (i >= rows_) {
            throw InvalidArgument("row index out of range");
        }
        auto r = row(i);
        values.insert(values.end(), r.begin(), r.end());
    }
    return DataMatrix(indices.size(), cols_, std::move(values));
}

std::size_t ClassRegistry::intern(std::string_view label) {
    if (auto found = find(label)) {
        return *found;
    }
    labels_.emplace_back(label);
    return labels_.size() - 1;
}

std::optional<std::size_t> ClassRegistry::find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

LabelVector LabelVector::outlier_flags(std::vector<bool> flags) {
    LabelVector labels;
    labels.kind = LabelKind::OutlierBinary;
    labels.values.reserve(flags.size());
    for (bool f : flags) {
        labels.values.push_back(f ? 1 : 0);
    }
    return labels;
}

std::vector<bool> LabelVector::outlier_mask() const {
    if (kind != LabelKind::OutlierBinary) {
        throw InvalidArgument("labels are not outlier-binary");
    }
    std::vector<bool> mask(values.size());
    std::transform(values.begin(), values.end(), mask.begin(), [](std::size_t v) { return v == 1; });
    return mask;
}

std::size_t LabelVector::outlier_count() const {
    if (kind != LabelKind::OutlierBinary) {
        throw InvalidArgument("labels are not outlier-binary");
    }
    return static_cast<std::size_t>(std::count(values.begin(), values.end(), std::size_t{1}));
}

}  // namespace firehash
