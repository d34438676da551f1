#pragma once

#include <vector>

#include "siegel/sphere.hpp"

namespace siegel {

// Orientation sign of the triangle (a, b, c): +1 counterclockwise, -1
// clockwise, 0 collinear.
int orientation(cplx a, cplx b, cplx c);

// Closed-segment intersection test, including touching and collinear overlap.
bool segments_intersect(cplx a, cplx b, cplx c, cplx d);

// True if the closed polyline through pts (in order) has no self-intersection
// apart from shared endpoints of index-adjacent segments. Uses a uniform grid
// over segment bounding boxes; exits on the first crossing found.
bool polyline_simple(const std::vector<cplx>& pts);

// Winding number of the closed polyline around the origin. No vertex may be 0.
int winding_number(const std::vector<cplx>& pts);

double point_segment_dist(cplx p, cplx a, cplx b);

// Symmetric Hausdorff distance between two finite point sets
// (grid-accelerated nearest neighbors).
double hausdorff_points(const std::vector<cplx>& a, const std::vector<cplx>& b);

// Symmetric Hausdorff distance between two closed polylines, measured from
// the vertices of one to the segments of the other.
double hausdorff_polylines(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace siegel
