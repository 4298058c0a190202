#include "liftmesh/mesh.hpp"

#include "liftmesh/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace liftmesh {

Triangulation triangulate_centroids(const BinTable& bins) {
    Triangulation tri;
    tri.vertices.reserve(bins.size());
    std::vector<Point2> points;
    points.reserve(bins.size());
    for (const auto& b : bins) {
        tri.vertices.push_back({b.h, b.point(), b.n});
        points.push_back(b.point());
    }
    tri.triangles = delaunay_triangulate(points);
    return tri;
}

WireMesh extract_edges(const Triangulation& tri, double a1, double cutoff_factor) {
    if (!(a1 > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "hexagon width a1 must be positive");
    }
    if (!(cutoff_factor > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "edge cutoff factor must be positive");
    }
    const double cutoff = cutoff_factor * a1;

    std::set<std::pair<int, int>> seen;  // vertex index pairs, lower index first
    for (const auto& t : tri.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int i = t[static_cast<std::size_t>(k)];
            const int j = t[static_cast<std::size_t>((k + 1) % 3)];
            seen.emplace(std::min(i, j), std::max(i, j));
        }
    }

    WireMesh mesh;
    mesh.edges.reserve(seen.size());
    for (auto [i, j] : seen) {
        const MeshVertex* a = &tri.vertices[static_cast<std::size_t>(i)];
        const MeshVertex* b = &tri.vertices[static_cast<std::size_t>(j)];
        if (b->h < a->h) std::swap(a, b);
        const double length = distance(a->point, b->point);
        if (length > cutoff) continue;
        mesh.edges.push_back(
            {a->h, b->h, a->point.x, a->point.y, b->point.x, b->point.y, length, a->count, b->count, 0, 0});
    }
    std::sort(mesh.edges.begin(), mesh.edges.end(),
              [](const MeshEdge& l, const MeshEdge& r) { return std::pair(l.from, l.to) < std::pair(r.from, r.to); });
    return mesh;
}

WireMesh reindex_edges(WireMesh mesh) {
    std::set<BinId> vertices;
    for (const auto& e : mesh.edges) {
        vertices.insert(e.from);
        vertices.insert(e.to);
    }
    std::unordered_map<BinId, int> index;
    int next = 1;
    for (BinId h : vertices) index.emplace(h, next++);
    for (auto& e : mesh.edges) {
        e.from_reindexed = index.at(e.from);
        e.to_reindexed = index.at(e.to);
    }
    return mesh;
}

std::vector<BinId> lattice_neighbors(BinId h, int b1, int total_bins) {
    const int row = (h - 1) / b1 + 1;  // 1-based
    const int col = (h - 1) % b1;      // 0-based
    // Even rows are shifted right, so their diagonal neighbours sit one column to the right.
    const int diagonal = (row % 2 == 0) ? 1 : -1;

    std::vector<BinId> out;
    auto add = [&](int r, int c) {
        if (r < 1 || c < 0 || c >= b1) return;
        const BinId id = (r - 1) * b1 + c + 1;
        if (id > total_bins) return;
        out.push_back(id);
    };
    add(row, col - 1);
    add(row, col + 1);
    add(row - 1, col);
    add(row - 1, col + diagonal);
    add(row + 1, col);
    add(row + 1, col + diagonal);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NeighborDensity> mean_neighbor_density(const BinTable& bins, int b1) {
    if (b1 < 1) {
        throw Error(ErrorCode::InvalidParameter, "b1 must be positive");
    }
    std::unordered_map<BinId, double> density;
    BinId max_h = 0;
    for (const auto& b : bins) {
        if (b.h < 1) throw Error(ErrorCode::UnknownBin, "bin index " + std::to_string(b.h) + " is not positive");
        if (!density.emplace(b.h, b.w).second) {
            throw Error(ErrorCode::UnknownBin, "bin index " + std::to_string(b.h) + " appears twice");
        }
        max_h = std::max(max_h, b.h);
    }
    const bool complete = static_cast<std::size_t>(max_h) == bins.size();
    if (complete && max_h % b1 != 0) {
        throw Error(ErrorCode::InvalidParameter, "a full lattice of " + std::to_string(max_h) +
                                                     " bins is not a whole number of rows of b1=" + std::to_string(b1));
    }
    const int total = complete ? max_h : (max_h + b1 - 1) / b1 * b1;

    std::vector<NeighborDensity> out;
    for (const auto& b : bins) {
        if (b.n <= 0) continue;
        double sum = 0.0;
        int present = 0;
        for (BinId nb : lattice_neighbors(b.h, b1, total)) {
            if (auto it = density.find(nb); it != density.end()) {
                sum += it->second;
                ++present;
            }
        }
        out.push_back({b.h, present > 0 ? sum / present : 0.0});
    }
    std::sort(out.begin(), out.end(), [](const NeighborDensity& l, const NeighborDensity& r) { return l.h < r.h; });
    return out;
}

std::vector<BinId> find_low_density_bins(const BinTable& bins, int b1, double md_thresh) {
    if (!(md_thresh >= 0.0 && md_thresh <= 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "md_thresh must lie in [0, 1]");
    }
    std::vector<BinId> out;
    for (const auto& d : mean_neighbor_density(bins, b1)) {
        if (d.mean_density < md_thresh) out.push_back(d.h);
    }
    return out;
}

PrunedModel prune_model(const BinTable& bins, const WireMesh& mesh, double hd_thresh, std::optional<double> md_thresh,
                        int b1) {
    std::unordered_set<BinId> low_density;
    if (md_thresh) {
        const auto flagged = find_low_density_bins(bins, b1, *md_thresh);
        low_density.insert(flagged.begin(), flagged.end());
    }

    PrunedModel out;
    std::unordered_set<BinId> kept;
    for (const auto& b : bins) {
        if (b.n > hd_thresh && !low_density.contains(b.h)) {
            out.bins.push_back(b);
            kept.insert(b.h);
        }
    }
    if (out.bins.empty()) {
        throw Error(ErrorCode::EmptyModel, "pruning removed every bin (hd_thresh=" + std::to_string(hd_thresh) + ")");
    }
    for (const auto& e : mesh.edges) {
        if (kept.contains(e.from) && kept.contains(e.to)) out.mesh.edges.push_back(e);
    }
    out.mesh = reindex_edges(std::move(out.mesh));
    return out;
}

}  // namespace liftmesh
