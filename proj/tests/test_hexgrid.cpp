#include "fixtures.hpp"
#include "oracles.hpp"

#include "liftmesh/error.hpp"
#include "liftmesh/hexgrid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

using namespace liftmesh;

namespace {

GridConfig reference_grid() { return compute_grid_config(fixture::kY2max, fixture::kB1, fixture::kQ); }

std::vector<Point2> random_points(std::size_t n, double y2max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({oracle::unit(rng), oracle::unit(rng) * y2max});
    return pts;
}

}  // namespace

TEST(GridConfig, ReferenceConfig) {
    const auto g = reference_grid();
    EXPECT_EQ(g.b1, 21);
    EXPECT_EQ(g.b2, 28);
    EXPECT_NEAR(g.a1, 0.05869649, 1e-6);
    EXPECT_NEAR(g.a2, 0.05083265, 1e-6);
    EXPECT_NEAR(g.origin.x, -0.1, 1e-12);
    EXPECT_NEAR(g.origin.y, -0.1156801, 1e-12);
    EXPECT_EQ(g.bins(), 588);
}

TEST(GridConfig, HandEvaluatedSmallGrid) {
    const auto g = compute_grid_config(1.0, 11, 0.1);
    EXPECT_EQ(g.b2, 13);
    EXPECT_NEAR(g.a2, 0.1, 1e-12);
    EXPECT_NEAR(g.a1, 0.1154701, 1e-7);
}

TEST(GridConfig, AspectRelation) {
    for (double y2 : {0.05, 0.3, 1.0, 2.7})
        for (int b1 : {2, 5, 21, 60})
            for (double q : {0.01, 0.1, 0.4}) {
                const auto g = compute_grid_config(y2, b1, q);
                EXPECT_NEAR(g.a2 / g.a1, std::sqrt(3.0) / 2.0, 1e-15);
                EXPECT_GE(g.b2, 2);
            }
}

TEST(GridConfig, RejectsBadParameters) {
    for (auto [b1, q] : std::vector<std::pair<int, double>>{{1, 0.1}, {0, 0.1}, {21, 0.0}, {21, 0.5}, {21, 0.6}, {21, -0.1}}) {
        try {
            compute_grid_config(1.0, b1, q);
            ADD_FAILURE() << b1 << " " << q;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
        }
    }
}

TEST(Centroids, ReferenceTable) {
    const auto c = generate_centroids(reference_grid());
    ASSERT_EQ(c.size(), 588u);
    const double expect_x[] = {-0.1, -0.0413035, 0.0173930, 0.0760895, 0.1347860};
    for (int i = 0; i < 5; ++i) {
        EXPECT_EQ(c[i].h, i + 1);
        EXPECT_NEAR(c[i].x, expect_x[i], 1e-6);
        EXPECT_NEAR(c[i].y, -0.1156801, 1e-6);
    }
    EXPECT_NEAR(c[21].x, -0.0706518, 1e-4);
    EXPECT_NEAR(c[21].y, -0.0648474, 1e-4);
    EXPECT_NEAR(c[426].x, 0.2522, 1e-3);
    EXPECT_NEAR(c[426].y, 0.9010, 1e-3);
}

TEST(Centroids, MatchesRowOffsetFormula) {
    const auto g = reference_grid();
    const auto c = generate_centroids(g);
    for (const auto& cc : c) {
        const int r = (cc.h - 1) / g.b1, k = (cc.h - 1) % g.b1;
        EXPECT_NEAR(cc.x, g.origin.x + k * g.a1 + (r % 2 == 1 ? g.a1 / 2 : 0.0), 1e-12);
        EXPECT_NEAR(cc.y, g.origin.y + r * g.a2, 1e-12);
        EXPECT_EQ(g.centroid(cc.h), cc.point());
    }
}

TEST(HexVertices, ReferenceTable) {
    const auto g = reference_grid();
    const auto poly = hex_polygon(generate_centroids(g)[0], g.a1);
    const Point2 expect[] = {{-0.1, -0.0817917}, {-0.1293482, -0.0987359}, {-0.1293482, -0.1326244},
                             {-0.1, -0.1495686}, {-0.0706518, -0.1326244}};
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(poly.vertices[i].x, expect[i].x, 1e-6) << i;
        EXPECT_NEAR(poly.vertices[i].y, expect[i].y, 1e-6) << i;
    }
}

TEST(HexVertices, RegularHexagons) {
    const auto g = reference_grid();
    const auto c = generate_centroids(g);
    const auto polys = generate_hex_vertices(c, g.a1);
    ASSERT_EQ(polys.size(), c.size());
    for (std::size_t i = 0; i < polys.size(); ++i) {
        double mx = 0, my = 0;
        for (int v = 0; v < 6; ++v) {
            const auto& a = polys[i].vertices[v];
            const auto& b = polys[i].vertices[(v + 1) % 6];
            EXPECT_NEAR(distance(a, b), g.a1 / std::sqrt(3.0), 1e-9);
            EXPECT_NEAR(distance(a, c[i].point()), g.a1 / std::sqrt(3.0), 1e-9);
            mx += a.x / 6;
            my += a.y / 6;
        }
        EXPECT_NEAR(mx, c[i].x, 1e-12);
        EXPECT_NEAR(my, c[i].y, 1e-12);
    }
}

TEST(Assign, ReferenceRows) {
    const auto g = reference_grid();
    const auto s = fixture::scaled({{0.277, 0.913}, {0.697, 0.538}});
    const auto fast = assign_points(s, g);
    EXPECT_EQ(fast[0].h, 427);
    EXPECT_EQ(fast[1].h, 287);
    const auto slow = assign_points(s, generate_centroids(g));
    EXPECT_EQ(slow[0].h, 427);
    EXPECT_EQ(slow[1].h, 287);
}

TEST(Assign, PointOnCentroid) {
    const auto g = reference_grid();
    const auto c = g.centroid(5);
    EXPECT_EQ(assign_points(fixture::scaled({c}), g)[0].h, 5);
}

TEST(Assign, AcceleratedMatchesBruteForce) {
    for (auto [y2, b1, q] : std::vector<std::tuple<double, int, double>>{
             {fixture::kY2max, 21, 0.1}, {0.2, 5, 0.05}, {3.0, 40, 0.3}, {1.0, 2, 0.1}, {0.01, 13, 0.2}}) {
        const auto g = compute_grid_config(y2, b1, q);
        const auto centroids = generate_centroids(g);
        auto pts = random_points(1000, y2, 7 + b1);
        // exact ties: midpoints between lattice neighbours
        for (BinId h = 1; h + 1 <= g.bins(); h += 3) {
            const auto a = g.centroid(h), b = g.centroid(h + 1);
            pts.push_back({(a.x + b.x) / 2, (a.y + b.y) / 2});
        }
        const auto s = fixture::scaled(pts, y2);
        const auto fast = assign_points(s, g);
        ASSERT_EQ(fast.size(), pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            EXPECT_EQ(fast[i].h, oracle::nearest_centroid(pts[i], centroids)) << i;
            EXPECT_EQ(fast[i].id, s.ids[i]);
        }
    }
}

TEST(Assign, WithinCircumradius) {
    // nearest centroid is never farther than the hexagon circumradius
    const auto g = reference_grid();
    const auto s = fixture::scaled(random_points(5000, fixture::kY2max, 3));
    for (const auto& a : assign_points(s, g)) {
        EXPECT_LE(distance({a.emb1, a.emb2}, g.centroid(a.h)), g.a1 / std::sqrt(3.0) + 1e-12);
    }
}

TEST(Counts, TallyOracle) {
    std::mt19937_64 rng(5);
    std::vector<AssignedPoint> assignment;
    std::map<BinId, int> tally;
    for (int i = 0; i < 200; ++i) {
        const BinId h = static_cast<BinId>(rng() % 40) + 1;
        assignment.push_back({i + 1, 0.0, 0.0, h});
        ++tally[h];
    }
    const auto counts = standardize_counts(assignment);
    ASSERT_EQ(counts.size(), tally.size());
    int mx = 0;
    for (auto& [h, n] : tally) mx = std::max(mx, n);
    auto it = tally.begin();
    for (const auto& c : counts) {
        EXPECT_EQ(c.h, it->first);
        EXPECT_EQ(c.n, it->second);
        EXPECT_DOUBLE_EQ(c.w, static_cast<double>(it->second) / mx);
        ++it;
    }
}

TEST(Counts, StandardizedAgainstMax) {
    std::vector<AssignedPoint> assignment;
    for (int i = 0; i < 1000; ++i) assignment.push_back({i + 1, 0, 0, 100});
    for (int i = 0; i < 4; ++i) assignment.push_back({2000 + i, 0, 0, 58});
    const auto counts = standardize_counts(assignment);
    ASSERT_EQ(counts.size(), 2u);
    EXPECT_EQ(counts[0].h, 58);
    EXPECT_EQ(counts[0].n, 4);
    EXPECT_DOUBLE_EQ(counts[0].w, 0.004);
    EXPECT_DOUBLE_EQ(counts[1].w, 1.0);
}

TEST(Counts, SingleBinAndEmpty) {
    std::vector<AssignedPoint> one{{1, 0, 0, 9}, {2, 0, 0, 9}};
    const auto c = standardize_counts(one);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].w, 1.0);
    try {
        standardize_counts({});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
    }
}

TEST(Merge, FullJoin) {
    const auto g = reference_grid();
    const auto c = generate_centroids(g);
    const std::vector<BinCount> counts{{58, 4, 0.004}, {427, 1000, 1.0}};
    const auto bins = merge_centroids_counts(c, counts);
    ASSERT_EQ(bins.size(), 588u);
    EXPECT_EQ(bins[0].h, 1);
    EXPECT_EQ(bins[0].n, 0);
    EXPECT_EQ(bins[0].w, 0.0);
    EXPECT_EQ(bins[57].n, 4);
    EXPECT_EQ(bins[426].w, 1.0);
    EXPECT_EQ(bins[426].x, c[426].x);

    const std::vector<BinCount> bad{{589, 1, 1.0}};
    try {
        merge_centroids_counts(c, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownBin);
    }
}

TEST(Group, MembersPerBin) {
    const std::vector<AssignedPoint> a{{10, 0, 0, 58}, {3, 0, 0, 2}, {7, 0, 0, 58}, {1, 0, 0, 58}, {4, 0, 0, 58}};
    const auto g = group_points_by_bin(a);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].h, 2);
    EXPECT_EQ(g[0].ids, (std::vector<Id>{3}));
    EXPECT_EQ(g[1].h, 58);
    EXPECT_EQ(g[1].ids, (std::vector<Id>{10, 7, 1, 4}));

    const std::vector<AssignedPoint> single{{1, 0, 0, 5}};
    ASSERT_EQ(group_points_by_bin(single).size(), 1u);
}

TEST(HexBinning, Consistent) {
    const auto s = fixture::scaled(random_points(300, fixture::kY2max, 21));
    const auto b = hex_binning(s, 21, 0.1);
    EXPECT_EQ(b.total_bins, 588);
    EXPECT_EQ(b.centroids.size(), 588u);
    EXPECT_EQ(b.polygons.size(), 588u);
    EXPECT_EQ(b.bins.size(), 588u);
    EXPECT_EQ(static_cast<std::size_t>(b.nonempty_bins), b.counts.size());
    int total = 0;
    for (const auto& r : b.bins) total += r.n;
    EXPECT_EQ(total, 300);
}
