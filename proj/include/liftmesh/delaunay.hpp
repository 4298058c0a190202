#pragma once

#include "liftmesh/geometry.hpp"

#include <array>
#include <span>
#include <vector>

namespace liftmesh {

/// Vertex indices of a counterclockwise triangle.
using TriangleIndices = std::array<int, 3>;

/// Delaunay triangulation by incremental sweep-hull insertion with Lawson flips and exact
/// predicates. Triangles are counterclockwise, rotated to start at their smallest index,
/// and sorted. Throws on fewer than 3 points, duplicate points, or all-collinear input.
std::vector<TriangleIndices> delaunay_triangulate(std::span<const Point2> points);

}  // namespace liftmesh
