#pragma once

// Independent reference implementations for the tests. Deliberately naive: nothing here
// shares code paths with the library beyond plain data types.

#include "liftmesh/geometry.hpp"
#include "liftmesh/hexgrid.hpp"
#include "liftmesh/ingest.hpp"
#include "liftmesh/lift.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using liftmesh::BinId;
using liftmesh::Id;
using liftmesh::Point2;

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Double loop argmin with the smallest-h tie-break.
inline BinId nearest_centroid(Point2 p, const std::vector<liftmesh::Centroid>& centroids) {
    BinId best = -1;
    double best_d = INFINITY;
    for (const auto& c : centroids) {
        const double dx = p.x - c.x, dy = p.y - c.y;
        const double d = dx * dx + dy * dy;
        if (d < best_d || (d == best_d && c.h < best)) {
            best_d = d;
            best = c.h;
        }
    }
    return best;
}

/// Brute-force nearest p-D row with the smallest-index tie-break.
inline std::size_t nearest_row(const std::vector<double>& x, const std::vector<std::vector<double>>& rows) {
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        double d = 0;
        for (std::size_t j = 0; j < x.size(); ++j) d += (x[j] - rows[k][j]) * (x[j] - rows[k][j]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

/// Circumcircle test in long double with an explicit tolerance.
/// Returns +1 inside, -1 outside, 0 within tol of the circle.
inline int in_circumcircle(Point2 a, Point2 b, Point2 c, Point2 d, long double tol) {
    const long double ax = a.x, ay = a.y, bx = b.x, by = b.y, cx = c.x, cy = c.y;
    const long double det = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    const long double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / det;
    const long double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / det;
    const long double r = std::hypot(ax - ux, ay - uy);
    const long double dist = std::hypot(static_cast<long double>(d.x) - ux, static_cast<long double>(d.y) - uy);
    if (dist < r - tol) return 1;
    if (dist > r + tol) return -1;
    return 0;
}

/// Enumerates every point triple whose circumcircle is empty: the Delaunay triangles of a
/// point set in general position. O(n^4).
inline std::set<std::array<int, 3>> delaunay_by_enumeration(const std::vector<Point2>& pts) {
    std::set<std::array<int, 3>> out;
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const auto& a = pts[i];
                const auto& b = pts[j];
                const auto& c = pts[k];
                const double area = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
                if (std::fabs(area) < 1e-12) continue;
                bool empty = true;
                for (int m = 0; m < n && empty; ++m) {
                    if (m == i || m == j || m == k) continue;
                    if (in_circumcircle(a, b, c, pts[m], 0) > 0) empty = false;
                }
                if (empty) out.insert({i, j, k});
            }
    return out;
}

/// Group-by means keyed by bin.
inline std::map<BinId, std::vector<double>> group_means(const liftmesh::HighDTable& highd,
                                                        const std::vector<liftmesh::AssignedPoint>& assignment) {
    std::map<Id, std::size_t> row;
    for (std::size_t i = 0; i < highd.ids.size(); ++i) row[highd.ids[i]] = i;
    std::map<BinId, std::vector<double>> sums;
    std::map<BinId, int> counts;
    const std::size_t p = highd.columns.size();
    for (const auto& a : assignment) {
        auto& s = sums[a.h];
        s.resize(p, 0.0);
        for (std::size_t j = 0; j < p; ++j) s[j] += highd.values[row[a.id] * p + j];
        ++counts[a.h];
    }
    for (auto& [h, s] : sums)
        for (double& v : s) v /= counts[h];
    return sums;
}

}  // namespace oracle
