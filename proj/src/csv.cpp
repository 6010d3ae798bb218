#include "firehash/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "firehash/error.hpp"

namespace firehash {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool needs_quoting(std::string_view s) {
    return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

std::string quote(std::string_view s) {
    if (!needs_quoting(s)) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

CsvTable parse_csv_text(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    bool record_has_content = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // blank lines are skipped
        if (record_has_content || record.size() > 1) {
            records.push_back(std::move(record));
        }
        record.clear();
        record_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started && !trim(field).empty()) {
                    throw DataError("unexpected quote inside unquoted CSV field");
                }
                in_quotes = true;
                field_started = true;
                record_has_content = true;
                break;
            case ',':
                end_field();
                record_has_content = true;
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                break;
            default:
                field += c;
                field_started = true;
                record_has_content = true;
        }
    }
    if (in_quotes) {
        throw DataError("unterminated quoted CSV field");
    }
    if (field_started || !record.empty() || record_has_content) {
        end_record();
    }

    if (records.empty()) {
        throw DataError("CSV has no header row");
    }
    CsvTable table;
    table.header = std::move(records.front());
    for (auto& h : table.header) {
        h = std::string(trim(h));
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw DataError("CSV line " + std::to_string(r + 1) + " has " +
                            std::to_string(records[r].size()) + " fields, header has " +
                            std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

CsvTable read_csv_table(const std::string& path) {
    return parse_csv_text(read_text(path));
}

std::optional<double> parse_real(std::string_view cell) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    if (cell.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<bool> parse_outlier_flag(std::string_view cell) {
    const std::string s = lower(trim(cell));
    if (s == "outlier" || s == "true" || s == "yes") return true;
    if (s == "inlier" || s == "false" || s == "no") return false;
    if (auto v = parse_real(s)) {
        if (*v == 1.0) return true;
        if (*v == 0.0) return false;
    }
    return std::nullopt;
}

static LoadedCsv load_table(const CsvTable& table, const std::optional<std::string>& label_column,
                     LabelKind label_kind) {
    std::optional<std::size_t> label_idx;
    if (label_column) {
        label_idx = table.column(*label_column);
        if (!label_idx) {
            throw DataError("label column '" + *label_column + "' not found in header");
        }
    }
    if (table.rows.empty()) {
        throw DataError("CSV has a header but no data rows");
    }

    LoadedCsv out;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (label_idx && j == *label_idx) continue;
        out.feature_names.push_back(table.header[j]);
    }
    if (out.feature_names.empty()) {
        throw DataError("CSV has no feature columns");
    }

    const std::size_t n = table.rows.size();
    const std::size_t d = out.feature_names.size();
    std::vector<double> values;
    values.reserve(n * d);
    LabelVector labels;
    labels.kind = label_kind;

    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = table.rows[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (label_idx && j == *label_idx) {
                if (label_kind == LabelKind::OutlierBinary) {
                    auto flag = parse_outlier_flag(row[j]);
                    if (!flag) {
                        throw DataError("line " + std::to_string(i + 2) + ", column '" +
                                        table.header[j] + "': '" + row[j] +
                                        "' is not an outlier flag (0/1)");
                    }
                    labels.values.push_back(*flag ? 1 : 0);
                } else {
                    labels.values.push_back(labels.registry.intern(trim(row[j])));
                }
                continue;
            }
            auto v = parse_real(row[j]);
            if (!v) {
                throw DataError("line " + std::to_string(i + 2) + ", column '" + table.header[j] +
                                "': '" + row[j] + "' is not a finite real number");
            }
            values.push_back(*v);
        }
    }
    out.data = DataMatrix(n, d, std::move(values));
    if (label_idx) {
        out.labels = std::move(labels);
    }
    return out;
}

LoadedCsv load_csv_text(std::string_view text, const std::optional<std::string>& label_column,
                        LabelKind label_kind) {
    return load_table(parse_csv_text(text), label_column, label_kind);
}

LoadedCsv load_csv(const std::string& path, const std::optional<std::string>& label_column,
                   LabelKind label_kind) {
    return load_table(read_csv_table(path), label_column, label_kind);
}

std::string format_real(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        throw DataError("cannot format real value");
    }
    std::string s(buf, ptr);
    if (std::isfinite(value) && s.find_first_of(".eE") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string format_scores(std::span<const double> scores,
                          std::optional<std::span<const bool>> rare_flags) {
    if (scores.empty()) {
        throw InvalidArgument("score vector is empty");
    }
    if (rare_flags && rare_flags->size() != scores.size()) {
        throw InvalidArgument("rare flag count does not match score count");
    }
    std::string out = rare_flags ? "row_index,score,rare\n" : "row_index,score\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!std::isfinite(scores[i])) {
            throw DataError("score " + std::to_string(i) + " is not finite");
        }
        out += std::to_string(i);
        out += ',';
        out += format_real(scores[i]);
        if (rare_flags) {
            out += (*rare_flags)[i] ? ",1" : ",0";
        }
        out += '\n';
    }
    return out;
}

void write_scores(const std::string& path, std::span<const double> scores,
                  std::optional<std::span<const bool>> rare_flags) {
    write_text(path, format_scores(scores, rare_flags));
}

std::string format_matrix(const DataMatrix& data, const std::vector<std::string>& feature_names,
                          const std::vector<std::string>* labels, const std::string& label_name) {
    if (feature_names.size() != data.cols()) {
        throw InvalidArgument("feature name count does not match column count");
    }
    if (labels && labels->size() != data.rows()) {
        throw InvalidArgument("label count does not match row count");
    }
    std::string out;
    for (std::size_t j = 0; j < feature_names.size(); ++j) {
        if (j) out += ',';
        out += quote(feature_names[j]);
    }
    if (labels) {
        out += ',';
        out += quote(label_name);
    }
    out += '\n';
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            if (j) out += ',';
            out += format_real(data(i, j));
        }
        if (labels) {
            out += ',';
            out += quote((*labels)[i]);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::string& path, std::string_view contents) {
    if (path == "-") {
        std::cout << contents;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace firehash
