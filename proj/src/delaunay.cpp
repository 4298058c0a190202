#include "liftmesh/delaunay.hpp"

#include "liftmesh/error.hpp"
#include "liftmesh/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace liftmesh {

namespace {

using predicates::incircle;
using predicates::orient2d;

std::uint64_t edge_key(int from, int to) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 32) | static_cast<std::uint32_t>(to);
}

double circumradius2(Point2 a, Point2 b, Point2 c) {
    const double bx = b.x - a.x, by = b.y - a.y;
    const double cx = c.x - a.x, cy = c.y - a.y;
    const double bl = bx * bx + by * by;
    const double cl = cx * cx + cy * cy;
    const double d = 0.5 / (bx * cy - by * cx);
    const double x = (cy * bl - by * cl) * d;
    const double y = (bx * cl - cx * bl) * d;
    return x * x + y * y;
}

Point2 circumcenter(Point2 a, Point2 b, Point2 c) {
    const double bx = b.x - a.x, by = b.y - a.y;
    const double cx = c.x - a.x, cy = c.y - a.y;
    const double bl = bx * bx + by * by;
    const double cl = cx * cx + cy * cy;
    const double d = 0.5 / (bx * cy - by * cx);
    return {a.x + (cy * bl - by * cl) * d, a.y + (bx * cl - cx * bl) * d};
}

class SweepHull {
public:
    explicit SweepHull(std::span<const Point2> points) : pts_(points) {}

    std::vector<TriangleIndices> run();

private:
    struct Owner {
        int triangle;
        int corner;  // edge runs from corner to corner + 1
    };

    Point2 at(int i) const { return pts_[static_cast<std::size_t>(i)]; }

    int add_triangle(int a, int b, int c);
    void set_triangle(int t, int a, int b, int c);
    void insert_outside(int p);
    void legalize(int p, std::vector<std::pair<int, int>>& pending);

    std::span<const Point2> pts_;
    std::vector<TriangleIndices> tris_;
    std::unordered_map<std::uint64_t, Owner> owners_;
    std::vector<int> hull_next_;
    std::vector<int> hull_prev_;
    int hull_start_ = -1;
};

int SweepHull::add_triangle(int a, int b, int c) {
    const int t = static_cast<int>(tris_.size());
    tris_.push_back({a, b, c});
    owners_[edge_key(a, b)] = {t, 0};
    owners_[edge_key(b, c)] = {t, 1};
    owners_[edge_key(c, a)] = {t, 2};
    return t;
}

void SweepHull::set_triangle(int t, int a, int b, int c) {
    auto& tri = tris_[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
        const auto it = owners_.find(edge_key(tri[k], tri[(k + 1) % 3]));
        if (it != owners_.end() && it->second.triangle == t) owners_.erase(it);
    }
    tri = {a, b, c};
    owners_[edge_key(a, b)] = {t, 0};
    owners_[edge_key(b, c)] = {t, 1};
    owners_[edge_key(c, a)] = {t, 2};
}

// Each pending directed edge (u, v) belongs to a triangle (u, v, p). Flips any edge whose
// neighbouring apex lies strictly inside that triangle's circumcircle.
void SweepHull::legalize(int p, std::vector<std::pair<int, int>>& pending) {
    while (!pending.empty()) {
        const auto [u, v] = pending.back();
        pending.pop_back();

        const auto mine = owners_.find(edge_key(u, v));
        if (mine == owners_.end()) continue;
        const int t = mine->second.triangle;
        const auto& tri = tris_[static_cast<std::size_t>(t)];
        if (tri[(mine->second.corner + 2) % 3] != p) continue;  // already flipped away

        const auto theirs = owners_.find(edge_key(v, u));
        if (theirs == owners_.end()) continue;  // hull edge
        const int t2 = theirs->second.triangle;
        const int d = tris_[static_cast<std::size_t>(t2)][(theirs->second.corner + 2) % 3];

        if (incircle(at(p), at(u), at(v), at(d)) > 0) {
            set_triangle(t, p, u, d);
            set_triangle(t2, p, d, v);
            pending.emplace_back(u, d);
            pending.emplace_back(d, v);
        }
    }
}

void SweepHull::insert_outside(int p) {
    const Point2 pp = at(p);
    auto visible = [&](int a) { return orient2d(at(a), at(hull_next_[static_cast<std::size_t>(a)]), pp) < 0; };

    int e = hull_start_;
    bool found = false;
    do {
        if (visible(e)) {
            found = true;
            break;
        }
        e = hull_next_[static_cast<std::size_t>(e)];
    } while (e != hull_start_);
    if (!found) {
        throw std::logic_error("delaunay: point " + std::to_string(p) + " is not outside the current hull");
    }
    // Visible hull edges form one contiguous chain; rewind to its start.
    for (int guard = 0; visible(hull_prev_[static_cast<std::size_t>(e)]); ++guard) {
        e = hull_prev_[static_cast<std::size_t>(e)];
        if (guard > static_cast<int>(pts_.size())) throw std::logic_error("delaunay: hull fully visible");
    }

    const int first = e;
    std::vector<std::pair<int, int>> pending;
    int a = first;
    while (visible(a)) {
        const int b = hull_next_[static_cast<std::size_t>(a)];
        add_triangle(b, a, p);
        pending.emplace_back(b, a);
        if (a != first) hull_next_[static_cast<std::size_t>(a)] = -1;  // dropped from hull
        a = b;
    }
    const int last = a;
    hull_next_[static_cast<std::size_t>(first)] = p;
    hull_prev_[static_cast<std::size_t>(p)] = first;
    hull_next_[static_cast<std::size_t>(p)] = last;
    hull_prev_[static_cast<std::size_t>(last)] = p;
    hull_start_ = p;

    legalize(p, pending);
}

std::vector<TriangleIndices> SweepHull::run() {
    const int n = static_cast<int>(pts_.size());

    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    for (const auto& q : pts_) {
        min_x = std::min(min_x, q.x);
        min_y = std::min(min_y, q.y);
        max_x = std::max(max_x, q.x);
        max_y = std::max(max_y, q.y);
    }
    const Point2 middle{(min_x + max_x) / 2.0, (min_y + max_y) / 2.0};

    auto argmin = [n](auto&& score) {
        int best = -1;
        double best_score = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const double s = score(i);
            if (s < best_score) {
                best_score = s;
                best = i;
            }
        }
        return best;
    };

    const int i0 = argmin([&](int i) { return squared_distance(at(i), middle); });
    const int i1 = argmin([&](int i) {
        return i == i0 ? std::numeric_limits<double>::infinity() : squared_distance(at(i), at(i0));
    });
    int i2 = argmin([&](int i) {
        if (i == i0 || i == i1 || orient2d(at(i0), at(i1), at(i)) == 0) return std::numeric_limits<double>::infinity();
        return circumradius2(at(i0), at(i1), at(i));
    });
    if (i2 < 0) {
        throw Error(ErrorCode::Collinear, "all points are collinear; no triangulation exists");
    }
    int j1 = i1;
    if (orient2d(at(i0), at(j1), at(i2)) < 0) std::swap(j1, i2);

    const Point2 center = circumcenter(at(i0), at(j1), at(i2));
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dist[static_cast<std::size_t>(i)] = squared_distance(at(i), center);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = dist[static_cast<std::size_t>(a)], db = dist[static_cast<std::size_t>(b)];
        return da < db || (da == db && a < b);
    });

    hull_next_.assign(static_cast<std::size_t>(n), -1);
    hull_prev_.assign(static_cast<std::size_t>(n), -1);
    tris_.reserve(static_cast<std::size_t>(2 * n));
    owners_.reserve(static_cast<std::size_t>(6 * n));

    add_triangle(i0, j1, i2);
    hull_next_[static_cast<std::size_t>(i0)] = j1;
    hull_next_[static_cast<std::size_t>(j1)] = i2;
    hull_next_[static_cast<std::size_t>(i2)] = i0;
    hull_prev_[static_cast<std::size_t>(j1)] = i0;
    hull_prev_[static_cast<std::size_t>(i2)] = j1;
    hull_prev_[static_cast<std::size_t>(i0)] = i2;
    hull_start_ = i0;

    for (int p : order) {
        if (p == i0 || p == j1 || p == i2) continue;
        insert_outside(p);
    }

    std::vector<TriangleIndices> out = std::move(tris_);
    for (auto& tri : out) {
        std::rotate(tri.begin(), std::min_element(tri.begin(), tri.end()), tri.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<TriangleIndices> delaunay_triangulate(std::span<const Point2> points) {
    if (points.size() < 3) {
        throw Error(ErrorCode::TooFewPoints, "triangulation needs at least 3 points, got " + std::to_string(points.size()));
    }
    if (points.size() > static_cast<std::size_t>(std::numeric_limits<int>::max() / 8)) {
        throw Error(ErrorCode::InvalidParameter, "too many points to triangulate");
    }
    std::vector<Point2> sorted(points.begin(), points.end());
    for (const auto& q : sorted) {
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
            throw Error(ErrorCode::NonFinite, "triangulation input contains a non-finite coordinate");
        }
    }
    std::sort(sorted.begin(), sorted.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::DuplicatePoint, "triangulation input contains duplicate points");
    }
    return SweepHull(points).run();
}

}  // namespace liftmesh
