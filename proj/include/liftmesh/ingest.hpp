#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace liftmesh {

using Id = std::int64_t;

/// High-dimensional observations, row-major, one row per ID.
struct HighDTable {
    std::vector<Id> ids;
    std::vector<std::string> columns;  // x1..xp
    std::vector<double> values;        // size() * dims()

    std::size_t size() const noexcept { return ids.size(); }
    std::size_t dims() const noexcept { return columns.size(); }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values.data() + i * dims(), dims()};
    }
};

/// Two-dimensional layout of the same observations.
struct EmbeddingTable {
    std::vector<Id> ids;
    std::vector<double> emb1;
    std::vector<double> emb2;

    std::size_t size() const noexcept { return ids.size(); }
};

struct AlignedTables {
    HighDTable highd;
    EmbeddingTable embedding;
};

HighDTable read_highd(std::istream& in, std::string_view source = "<stream>");
HighDTable load_highd(const std::filesystem::path& path);
void write_highd(std::ostream& out, const HighDTable& table);

EmbeddingTable read_embedding(std::istream& in, std::string_view source = "<stream>");
EmbeddingTable load_embedding(const std::filesystem::path& path);
void write_embedding(std::ostream& out, const EmbeddingTable& table);

/// Sorts both tables ascending by ID. Throws IdMismatchError when the ID sets differ.
AlignedTables align(HighDTable highd, EmbeddingTable embedding);

HighDTable sorted_by_id(HighDTable table);
EmbeddingTable sorted_by_id(EmbeddingTable table);

namespace csv {

/// Splits one line on commas; strips surrounding whitespace and double quotes.
std::vector<std::string> split_line(std::string_view line);

/// Formats a double with 17 significant digits.
std::string format_double(double value);

}  // namespace csv

}  // namespace liftmesh
