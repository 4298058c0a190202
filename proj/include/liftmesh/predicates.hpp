#pragma once

#include "liftmesh/geometry.hpp"

namespace liftmesh::predicates {

/// Sign of the orientation determinant of (a, b, c): +1 counterclockwise, -1 clockwise,
/// 0 collinear. Exact for all finite double inputs.
int orient2d(Point2 a, Point2 b, Point2 c);

/// For counterclockwise (a, b, c): +1 if d lies strictly inside their circumcircle,
/// -1 if strictly outside, 0 if cocircular. Exact for all finite double inputs.
int incircle(Point2 a, Point2 b, Point2 c, Point2 d);

}  // namespace liftmesh::predicates
