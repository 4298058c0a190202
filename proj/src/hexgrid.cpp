#include "liftmesh/hexgrid.hpp"

#include "liftmesh/error.hpp"
#include "liftmesh/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace liftmesh {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

struct Nearest {
    double d2 = std::numeric_limits<double>::infinity();
    BinId h = 0;

    void offer(double candidate_d2, BinId candidate_h) noexcept {
        if (candidate_d2 < d2 || (candidate_d2 == d2 && candidate_h < h)) {
            d2 = candidate_d2;
            h = candidate_h;
        }
    }
};

}  // namespace

Point2 GridConfig::centroid(BinId h) const noexcept {
    const int row = (h - 1) / b1;  // 0-based
    const int col = (h - 1) % b1;
    const double shift = (row % 2 == 1) ? a1 / 2.0 : 0.0;
    return {origin.x + shift + col * a1, origin.y + row * a2};
}

GridConfig compute_grid_config(double y2max, int b1, double q) {
    if (b1 < 2) {
        throw Error(ErrorCode::InvalidParameter, "b1 must be at least 2, got " + std::to_string(b1));
    }
    if (!(q > 0.0 && q < 0.5)) {
        throw Error(ErrorCode::InvalidParameter, "buffer q must lie in (0, 0.5), got " + std::to_string(q));
    }
    if (!(y2max > 0.0) || !std::isfinite(y2max)) {
        throw Error(ErrorCode::DegenerateAxis, "y2max must be positive and finite");
    }
    const double r1 = 1.0;
    const double r2 = y2max;

    const double a1_initial = r1 * (1.0 + 2.0 * q) / (b1 - 1);
    const double rows = std::ceil(r2 * (1.0 + 2.0 * q) / ((kSqrt3 / 2.0) * a1_initial));

    GridConfig config;
    config.b1 = b1;
    config.b2 = static_cast<int>(rows) + 1;
    const double span = r2 + q * (r1 + r2);
    config.a2 = span / (config.b2 - 1);
    config.a1 = (2.0 / kSqrt3) * config.a2;
    config.q = q;
    config.origin = {-q * r1, -q * r2};
    return config;
}

GridConfig compute_grid_config(const ScaledEmbedding& scaled, int b1, double q) {
    return compute_grid_config(scaled.y2max, b1, q);
}

std::vector<Centroid> generate_centroids(const GridConfig& config) {
    std::vector<Centroid> out;
    out.reserve(static_cast<std::size_t>(config.bins()));
    for (BinId h = 1; h <= config.bins(); ++h) {
        const Point2 c = config.centroid(h);
        out.push_back({h, c.x, c.y});
    }
    return out;
}

HexPolygon hex_polygon(const Centroid& centroid, double a1) {
    const double dx = a1 / 2.0;
    const double dy = a1 / kSqrt3;
    const double vf = a1 / (2.0 * kSqrt3);
    const double x = centroid.x;
    const double y = centroid.y;
    return {centroid.h,
            {{{x, y + dy}, {x - dx, y + vf}, {x - dx, y - vf}, {x, y - dy}, {x + dx, y - vf}, {x + dx, y + vf}}}};
}

std::vector<HexPolygon> generate_hex_vertices(std::span<const Centroid> centroids, double a1) {
    if (!(a1 > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "hexagon width a1 must be positive");
    }
    std::vector<HexPolygon> out;
    out.reserve(centroids.size());
    for (const auto& c : centroids) out.push_back(hex_polygon(c, a1));
    return out;
}

std::vector<AssignedPoint> assign_points(const ScaledEmbedding& scaled, std::span<const Centroid> centroids) {
    if (centroids.empty()) {
        throw Error(ErrorCode::EmptyInput, "no centroids to assign points to");
    }
    std::vector<AssignedPoint> out(scaled.size());
    parallel_for(scaled.size(), [&](std::size_t i) {
        const Point2 p = scaled.point(i);
        Nearest best;
        for (const auto& c : centroids) best.offer(squared_distance(p, c.point()), c.h);
        out[i] = {scaled.ids[i], p.x, p.y, best.h};
    });
    return out;
}

std::vector<AssignedPoint> assign_points(const ScaledEmbedding& scaled, const GridConfig& config) {
    if (config.bins() <= 0) {
        throw Error(ErrorCode::EmptyInput, "grid has no bins");
    }
    const int last_row = config.b2 - 1;
    const int last_col = config.b1 - 1;
    auto clamp_row = [&](double r) { return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(last_row))); };
    auto clamp_col = [&](double c) { return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(last_col))); };
    auto bin_at = [&](int row, int col) { return row * config.b1 + col + 1; };

    std::vector<AssignedPoint> out(scaled.size());
    parallel_for(scaled.size(), [&](std::size_t i) {
        const Point2 p = scaled.point(i);

        // Any nearby centroid bounds the search radius.
        const int row0 = clamp_row(std::round((p.y - config.origin.y) / config.a2));
        const double shift0 = (row0 % 2 == 1) ? config.a1 / 2.0 : 0.0;
        const int col0 = clamp_col(std::round((p.x - config.origin.x - shift0) / config.a1));
        const double radius = distance(p, config.centroid(bin_at(row0, col0)));

        // Every centroid within `radius` lies in this index box; one extra index of slack on
        // each side absorbs rounding in the division.
        const int row_lo = clamp_row(std::floor((p.y - radius - config.origin.y) / config.a2) - 1);
        const int row_hi = clamp_row(std::ceil((p.y + radius - config.origin.y) / config.a2) + 1);
        Nearest best;
        for (int row = row_lo; row <= row_hi; ++row) {
            const double shift = (row % 2 == 1) ? config.a1 / 2.0 : 0.0;
            const int col_lo = clamp_col(std::floor((p.x - radius - config.origin.x - shift) / config.a1) - 1);
            const int col_hi = clamp_col(std::ceil((p.x + radius - config.origin.x - shift) / config.a1) + 1);
            for (int col = col_lo; col <= col_hi; ++col) {
                const BinId h = bin_at(row, col);
                best.offer(squared_distance(p, config.centroid(h)), h);
            }
        }
        out[i] = {scaled.ids[i], p.x, p.y, best.h};
    });
    return out;
}

std::vector<BinCount> standardize_counts(std::span<const AssignedPoint> assignment) {
    if (assignment.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot standardize counts of an empty assignment");
    }
    std::map<BinId, int> tally;
    for (const auto& a : assignment) ++tally[a.h];
    int max_count = 0;
    for (const auto& [h, n] : tally) max_count = std::max(max_count, n);

    std::vector<BinCount> out;
    out.reserve(tally.size());
    for (const auto& [h, n] : tally) {
        out.push_back({h, n, static_cast<double>(n) / max_count});
    }
    return out;
}

BinTable merge_centroids_counts(std::span<const Centroid> centroids, std::span<const BinCount> counts) {
    std::map<BinId, const BinCount*> by_bin;
    for (const auto& c : counts) by_bin.emplace(c.h, &c);

    BinTable out;
    out.reserve(centroids.size());
    for (const auto& c : centroids) {
        BinRecord rec{c.h, c.x, c.y, 0, 0.0};
        if (auto it = by_bin.find(c.h); it != by_bin.end()) {
            rec.n = it->second->n;
            rec.w = it->second->w;
            by_bin.erase(it);
        }
        out.push_back(rec);
    }
    if (!by_bin.empty()) {
        throw Error(ErrorCode::UnknownBin,
                    "counts reference hexagon " + std::to_string(by_bin.begin()->first) + " absent from the centroids");
    }
    std::sort(out.begin(), out.end(), [](const BinRecord& a, const BinRecord& b) { return a.h < b.h; });
    return out;
}

std::vector<BinMembers> group_points_by_bin(std::span<const AssignedPoint> assignment) {
    std::map<BinId, std::vector<Id>> groups;
    for (const auto& a : assignment) groups[a.h].push_back(a.id);
    std::vector<BinMembers> out;
    out.reserve(groups.size());
    for (auto& [h, ids] : groups) out.push_back({h, std::move(ids)});
    return out;
}

HexBinning hex_binning(const ScaledEmbedding& scaled, int b1, double q) {
    HexBinning hb;
    hb.config = compute_grid_config(scaled, b1, q);
    hb.centroids = generate_centroids(hb.config);
    hb.polygons = generate_hex_vertices(hb.centroids, hb.config.a1);
    hb.assignment = assign_points(scaled, hb.config);
    hb.counts = standardize_counts(hb.assignment);
    hb.members = group_points_by_bin(hb.assignment);
    hb.bins = merge_centroids_counts(hb.centroids, hb.counts);
    hb.total_bins = hb.config.bins();
    hb.nonempty_bins = static_cast<int>(hb.counts.size());
    return hb;
}

}  // namespace liftmesh
