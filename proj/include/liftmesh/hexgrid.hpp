#pragma once

#include "liftmesh/geometry.hpp"
#include "liftmesh/ingest.hpp"
#include "liftmesh/scale.hpp"

#include <array>
#include <span>
#include <vector>

namespace liftmesh {

/// Hexagon index, 1-based, row-major over the lattice.
using BinId = int;

/// Staggered lattice of pointy-top hexagons. Odd rows (1-based) start at the origin,
/// even rows are shifted right by a1/2.
struct GridConfig {
    int b1 = 0;       // bins per row
    int b2 = 0;       // rows
    double a1 = 0.0;  // hexagon width, equal to the nearest-centroid distance
    double a2 = 0.0;  // row spacing, sqrt(3)/2 * a1
    double q = 0.0;   // buffer proportion
    Point2 origin;    // centroid of h = 1

    int bins() const noexcept { return b1 * b2; }
    int row_of(BinId h) const noexcept { return (h - 1) / b1 + 1; }
    int col_of(BinId h) const noexcept { return (h - 1) % b1 + 1; }
    Point2 centroid(BinId h) const noexcept;
};

struct Centroid {
    BinId h = 0;
    double x = 0.0;
    double y = 0.0;

    Point2 point() const noexcept { return {x, y}; }
};

struct HexPolygon {
    BinId h = 0;
    std::array<Point2, 6> vertices;
};

struct AssignedPoint {
    Id id = 0;
    double emb1 = 0.0;
    double emb2 = 0.0;
    BinId h = 0;
};

struct BinCount {
    BinId h = 0;
    int n = 0;       // raw count n_h
    double w = 0.0;  // n_h / max n_h
};

/// One row per hexagon: centroid plus raw and standardized counts.
struct BinRecord {
    BinId h = 0;
    double x = 0.0;
    double y = 0.0;
    int n = 0;
    double w = 0.0;

    Point2 point() const noexcept { return {x, y}; }
};

using BinTable = std::vector<BinRecord>;

struct BinMembers {
    BinId h = 0;
    std::vector<Id> ids;
};

GridConfig compute_grid_config(double y2max, int b1, double q);
GridConfig compute_grid_config(const ScaledEmbedding& scaled, int b1, double q);

std::vector<Centroid> generate_centroids(const GridConfig& config);

/// Six vertices per hexagon, listed counterclockwise starting from the top.
std::vector<HexPolygon> generate_hex_vertices(std::span<const Centroid> centroids, double a1);
HexPolygon hex_polygon(const Centroid& centroid, double a1);

/// Nearest centroid by Euclidean distance, ties to the smallest h. Exhaustive search.
std::vector<AssignedPoint> assign_points(const ScaledEmbedding& scaled, std::span<const Centroid> centroids);

/// Same result as the exhaustive search, restricted to lattice candidates near each point.
std::vector<AssignedPoint> assign_points(const ScaledEmbedding& scaled, const GridConfig& config);

/// Non-empty bins only, ascending by h.
std::vector<BinCount> standardize_counts(std::span<const AssignedPoint> assignment);

/// Full join on h; bins without points carry zero counts.
BinTable merge_centroids_counts(std::span<const Centroid> centroids, std::span<const BinCount> counts);

/// Member IDs per non-empty bin, ascending by h; IDs keep assignment order.
std::vector<BinMembers> group_points_by_bin(std::span<const AssignedPoint> assignment);

/// Everything produced by binning a scaled layout.
struct HexBinning {
    GridConfig config;
    std::vector<Centroid> centroids;
    std::vector<HexPolygon> polygons;
    std::vector<AssignedPoint> assignment;
    std::vector<BinCount> counts;
    std::vector<BinMembers> members;
    BinTable bins;
    int total_bins = 0;     // b
    int nonempty_bins = 0;  // m
};

HexBinning hex_binning(const ScaledEmbedding& scaled, int b1, double q);

}  // namespace liftmesh
