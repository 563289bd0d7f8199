#pragma once

#include <vector>

#include "dma/types.hpp"

namespace dma {

// Small convex-polygon toolbox used for slope cells and hull faces.
// Polygons are CCW vertex lists; an empty list is the empty set.

inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) -
         (a.y() - o.y()) * (b.x() - o.x());
}

// Shoelace area of a CCW polygon (0 for fewer than 3 vertices).
double polygon_area(const std::vector<Vec2>& poly);

// Andrew monotone chain; collinear points are dropped.
std::vector<Vec2> convex_hull_2d(std::vector<Vec2> pts, double eps = 1e-12);

// Clip a convex polygon by the halfplane { p : a.p <= c }.  `slack` keeps
// points violating the constraint by at most that amount, so degenerate
// (point/segment) cells survive rounding.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& a,
                                 double c, double slack);

// Drop consecutive near-collinear vertices (tolerance on the cross product
// normalized by edge lengths).
std::vector<Vec2> prune_collinear(const std::vector<Vec2>& poly,
                                  double tol = 1e-10);

bool point_in_convex(const std::vector<Vec2>& poly, const Vec2& p,
                     double tol = 0.0);

// Euclidean distance from p to the polygon (0 inside).
double distance_to_convex(const std::vector<Vec2>& poly, const Vec2& p);

// Hausdorff distance between convex polygons (empty/empty -> 0; one empty ->
// +inf).
double hausdorff(const std::vector<Vec2>& A, const std::vector<Vec2>& B);

// Area of the intersection of two convex polygons.
double intersection_area(const std::vector<Vec2>& A,
                         const std::vector<Vec2>& B);

}  // namespace dma
