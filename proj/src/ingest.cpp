#include "liftmesh/ingest.hpp"

#include "liftmesh/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <unordered_set>

namespace liftmesh {

namespace csv {

std::vector<std::string> split_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
        if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
            field = field.substr(1, field.size() - 2);
        }
        fields.emplace_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string format_double(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace csv

namespace {

struct Header {
    std::vector<std::string> names;
    std::size_t line_count = 0;
};

std::optional<std::size_t> find_column(const std::vector<std::string>& names, std::string_view name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

std::string where(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line);
}

double parse_real(const std::string& cell, std::string_view column, std::string_view source, std::size_t line) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (!cell.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (cell.empty() || ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::NonNumeric,
                    where(source, line) + ": column '" + std::string(column) + "' has non-numeric value '" + cell + "'");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::NonFinite,
                    where(source, line) + ": column '" + std::string(column) + "' has non-finite value '" + cell + "'");
    }
    return value;
}

Id parse_id(const std::string& cell, std::string_view source, std::size_t line) {
    Id value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw Error(ErrorCode::NonNumeric, where(source, line) + ": column 'ID' has non-integer value '" + cell + "'");
    }
    return value;
}

/// Parses "x<k>" column names; returns k.
std::optional<int> x_column_index(std::string_view name) {
    if (name.size() < 2 || name.front() != 'x') return std::nullopt;
    int k = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
    if (ec != std::errc() || ptr != name.data() + name.size() || k < 1) return std::nullopt;
    return k;
}

template <typename Fn>
void for_each_row(std::istream& in, std::size_t expected_fields, std::string_view source, Fn&& fn) {
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = csv::split_line(line);
        if (fields.size() != expected_fields) {
            throw Error(ErrorCode::NonNumeric, where(source, line_no) + ": expected " + std::to_string(expected_fields) +
                                                   " fields, found " + std::to_string(fields.size()));
        }
        fn(fields, line_no);
    }
}

std::vector<std::string> read_header(std::istream& in, std::string_view source) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::MissingColumn, std::string(source) + ": missing header row");
    }
    return csv::split_line(line);
}

void check_unique(const std::vector<Id>& ids, std::string_view source) {
    std::unordered_set<Id> seen;
    seen.reserve(ids.size());
    for (Id id : ids) {
        if (!seen.insert(id).second) {
            throw Error(ErrorCode::DuplicateId, std::string(source) + ": duplicate ID " + std::to_string(id));
        }
    }
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    return in;
}

std::vector<std::size_t> id_order(const std::vector<Id>& ids) {
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    return order;
}

}  // namespace

HighDTable read_highd(std::istream& in, std::string_view source) {
    const auto names = read_header(in, source);
    const auto id_col = find_column(names, "ID");
    if (!id_col) {
        throw Error(ErrorCode::MissingColumn, std::string(source) + ": missing 'ID' column");
    }

    // (k, column position) for every x<k> column
    std::vector<std::pair<int, std::size_t>> x_cols;
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (auto k = x_column_index(names[c])) x_cols.emplace_back(*k, c);
    }
    std::sort(x_cols.begin(), x_cols.end());
    for (std::size_t j = 0; j < x_cols.size(); ++j) {
        if (x_cols[j].first != static_cast<int>(j + 1)) {
            throw Error(ErrorCode::MissingColumn,
                        std::string(source) + ": x-columns must be x1..xp; column 'x" + std::to_string(j + 1) + "' missing");
        }
    }
    if (x_cols.size() < 2) {
        throw Error(ErrorCode::TooFewDimensions,
                    std::string(source) + ": need at least 2 x-prefixed columns, found " + std::to_string(x_cols.size()));
    }

    HighDTable table;
    for (const auto& [k, c] : x_cols) table.columns.push_back(names[c]);
    const std::size_t p = x_cols.size();

    for_each_row(in, names.size(), source, [&](const std::vector<std::string>& fields, std::size_t line_no) {
        table.ids.push_back(parse_id(fields[*id_col], source, line_no));
        for (std::size_t j = 0; j < p; ++j) {
            const std::size_t c = x_cols[j].second;
            table.values.push_back(parse_real(fields[c], names[c], source, line_no));
        }
    });
    check_unique(table.ids, source);
    return table;
}

HighDTable load_highd(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_highd(in, path.string());
}

void write_highd(std::ostream& out, const HighDTable& table) {
    out << "ID";
    for (const auto& name : table.columns) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << table.ids[i];
        for (double v : table.row(i)) out << ',' << csv::format_double(v);
        out << '\n';
    }
}

EmbeddingTable read_embedding(std::istream& in, std::string_view source) {
    const auto names = read_header(in, source);
    const auto id_col = find_column(names, "ID");
    const auto e1_col = find_column(names, "emb1");
    const auto e2_col = find_column(names, "emb2");
    for (auto [col, name] : {std::pair{id_col, "ID"}, std::pair{e1_col, "emb1"}, std::pair{e2_col, "emb2"}}) {
        if (!col) {
            throw Error(ErrorCode::MissingColumn, std::string(source) + ": missing '" + name + "' column");
        }
    }

    EmbeddingTable table;
    for_each_row(in, names.size(), source, [&](const std::vector<std::string>& fields, std::size_t line_no) {
        table.ids.push_back(parse_id(fields[*id_col], source, line_no));
        table.emb1.push_back(parse_real(fields[*e1_col], "emb1", source, line_no));
        table.emb2.push_back(parse_real(fields[*e2_col], "emb2", source, line_no));
    });
    check_unique(table.ids, source);

    for (auto [axis, name] : {std::pair{&table.emb1, "emb1"}, std::pair{&table.emb2, "emb2"}}) {
        const auto [lo, hi] = std::minmax_element(axis->begin(), axis->end());
        if (axis->empty() || !(*hi - *lo > 0.0)) {
            throw Error(ErrorCode::DegenerateAxis, std::string(source) + ": column '" + name + "' has zero range");
        }
    }
    return table;
}

EmbeddingTable load_embedding(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_embedding(in, path.string());
}

void write_embedding(std::ostream& out, const EmbeddingTable& table) {
    out << "ID,emb1,emb2\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << table.ids[i] << ',' << csv::format_double(table.emb1[i]) << ',' << csv::format_double(table.emb2[i])
            << '\n';
    }
}

HighDTable sorted_by_id(HighDTable table) {
    const auto order = id_order(table.ids);
    HighDTable out;
    out.columns = std::move(table.columns);
    out.ids.reserve(order.size());
    out.values.reserve(table.values.size());
    const std::size_t p = out.columns.size();
    for (std::size_t i : order) {
        out.ids.push_back(table.ids[i]);
        out.values.insert(out.values.end(), table.values.begin() + static_cast<std::ptrdiff_t>(i * p),
                          table.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * p));
    }
    return out;
}

EmbeddingTable sorted_by_id(EmbeddingTable table) {
    const auto order = id_order(table.ids);
    EmbeddingTable out;
    out.ids.reserve(order.size());
    out.emb1.reserve(order.size());
    out.emb2.reserve(order.size());
    for (std::size_t i : order) {
        out.ids.push_back(table.ids[i]);
        out.emb1.push_back(table.emb1[i]);
        out.emb2.push_back(table.emb2[i]);
    }
    return out;
}

AlignedTables align(HighDTable highd, EmbeddingTable embedding) {
    AlignedTables out{sorted_by_id(std::move(highd)), sorted_by_id(std::move(embedding))};
    const auto& a = out.highd.ids;
    const auto& b = out.embedding.ids;
    std::vector<Id> missing_in_emb;
    std::vector<Id> missing_in_highd;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(missing_in_emb));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(missing_in_highd));
    if (!missing_in_emb.empty() || !missing_in_highd.empty()) {
        throw IdMismatchError(std::move(missing_in_emb), std::move(missing_in_highd));
    }
    return out;
}

}  // namespace liftmesh
