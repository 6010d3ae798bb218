#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "firehash/data.hpp"

namespace firehash {

/// Raw CSV contents: header row plus string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Position of `name` in the header, if present.
    std::optional<std::size_t> column(std::string_view name) const;
};

/// Reads an RFC-4180-style CSV (quoted fields, doubled quotes, CRLF tolerated).
/// The first record is the header; every data record must match its width.
CsvTable read_csv_table(const std::string& path);
CsvTable parse_csv_text(std::string_view text);

/// Strict real parser: rejects empty cells, trailing junk, NaN and infinities.
std::optional<double> parse_real(std::string_view cell);

struct LoadedCsv {
    DataMatrix data;
    std::optional<LabelVector> labels;
    std::vector<std::string> feature_names;
};

/// Loads a numeric CSV; the optional label column is excluded from the features
/// and parsed according to `label_kind`.
LoadedCsv load_csv(const std::string& path,
                   const std::optional<std::string>& label_column = std::nullopt,
                   LabelKind label_kind = LabelKind::OutlierBinary);
LoadedCsv load_csv_text(std::string_view text,
                        const std::optional<std::string>& label_column = std::nullopt,
                        LabelKind label_kind = LabelKind::OutlierBinary);

/// Parses one outlier-binary label cell (0/1, true/false, inlier/outlier).
std::optional<bool> parse_outlier_flag(std::string_view cell);

/// Shortest decimal that round-trips to the same double; integral values keep a
/// trailing ".0" so the cell still reads as a real.
std::string format_real(double value);

/// Writes `row_index,score[,rare]` rows under a header. `path == "-"` writes to stdout.
void write_scores(const std::string& path, std::span<const double> scores,
                  std::optional<std::span<const bool>> rare_flags = std::nullopt);
std::string format_scores(std::span<const double> scores,
                          std::optional<std::span<const bool>> rare_flags = std::nullopt);

/// Writes a matrix with an optional trailing label column.
std::string format_matrix(const DataMatrix& data, const std::vector<std::string>& feature_names,
                          const std::vector<std::string>* labels = nullptr,
                          const std::string& label_name = "label");

/// Writes `contents` to `path`, or stdout for "-".
void write_text(const std::string& path, std::string_view contents);
std::string read_text(const std::string& path);

}  // namespace firehash
