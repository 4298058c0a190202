#pragma once

#include "liftmesh/delaunay.hpp"
#include "liftmesh/hexgrid.hpp"

#include <optional>
#include <span>
#include <vector>

namespace liftmesh {

/// Drop triangulation edges longer than this multiple of a1. Lattice neighbours sit at a1,
/// the next lattice distance is sqrt(3) * a1.
inline constexpr double kDefaultEdgeCutoffFactor = 1.5;

struct MeshVertex {
    BinId h = 0;
    Point2 point;
    int count = 0;  // n_h
};

struct Triangulation {
    std::vector<MeshVertex> vertices;
    std::vector<TriangleIndices> triangles;  // indices into vertices
};

/// Undirected centroid-to-centroid connection with from < to.
struct MeshEdge {
    BinId from = 0;
    BinId to = 0;
    double x_from = 0.0;
    double y_from = 0.0;
    double x_to = 0.0;
    double y_to = 0.0;
    double length = 0.0;
    int from_count = 0;
    int to_count = 0;
    int from_reindexed = 0;
    int to_reindexed = 0;

    friend bool operator==(const MeshEdge&, const MeshEdge&) = default;
};

struct WireMesh {
    std::vector<MeshEdge> edges;  // ascending by (from, to)
};

enum class MeshStrategy {
    FilterFullMesh,  // triangulate every centroid once, then drop edges touching removed bins
    Retriangulate,   // triangulate only the surviving centroids
};

Triangulation triangulate_centroids(const BinTable& bins);

/// Unique undirected edges, annotated with coordinates, length and endpoint counts.
/// Edges longer than cutoff_factor * a1 are removed. Reindexing is left to reindex_edges.
WireMesh extract_edges(const Triangulation& tri, double a1, double cutoff_factor = kDefaultEdgeCutoffFactor);

/// Order-preserving compaction of the distinct bin ids in the edges onto 1..k.
WireMesh reindex_edges(WireMesh mesh);

struct NeighborDensity {
    BinId h = 0;
    double mean_density = 0.0;
};

/// Lattice neighbours of h that fall inside a b1-wide grid of total_bins hexagons.
std::vector<BinId> lattice_neighbors(BinId h, int b1, int total_bins);

/// Mean w_h over the lattice neighbours present in `bins`, for every non-empty bin.
std::vector<NeighborDensity> mean_neighbor_density(const BinTable& bins, int b1);

/// Non-empty bins whose mean neighbour density is strictly below md_thresh.
std::vector<BinId> find_low_density_bins(const BinTable& bins, int b1, double md_thresh);

struct PrunedModel {
    BinTable bins;
    WireMesh mesh;
};

/// Keeps bins with n_h > hd_thresh (and, when md_thresh is given, not low-density), drops
/// edges touching removed bins, and reindexes the mesh.
PrunedModel prune_model(const BinTable& bins, const WireMesh& mesh, double hd_thresh, std::optional<double> md_thresh,
                        int b1);

}  // namespace liftmesh
