#pragma once

#include <vector>

#include "dma/types.hpp"

namespace dma {

enum class DomainKind { Box, Ball, Polygon };

// A bounded convex domain in R^1 or R^2.  For d=1 only Box is meaningful
// (the segment (lo.x, hi.x)); the y components are ignored and kept at 0.
struct ConvexDomainSpec {
  DomainKind kind = DomainKind::Box;
  int dim = 2;
  Vec2 lo = Vec2::Zero(), hi = Vec2::Zero();  // Box
  Vec2 center = Vec2::Zero();                 // Ball
  double radius = 0;                          // Ball
  std::vector<Vec2> vertices;                 // Polygon, CCW, strictly convex

  static ConvexDomainSpec segment(double a, double b);
  static ConvexDomainSpec box(const Vec2& lo, const Vec2& hi);
  static ConvexDomainSpec ball(const Vec2& center, double radius);
  static ConvexDomainSpec polygon(std::vector<Vec2> verts);

  // Strict interior membership.
  bool contains(const Vec2& x) const;
  // Closure membership with an absolute slack (for points constructed on the
  // boundary by floating-point ray intersection).
  bool contains_closure(const Vec2& x, double tol = 1e-12) const;

  double diameter() const;
  // Axis-aligned bounding box.
  void bounding_box(Vec2& blo, Vec2& bhi) const;

  // Largest t >= 0 with x + t*dir in the closure (exact per-kind formulas;
  // t parameterizes dir directly, not its normalization).  Requires x in the
  // closure and dir != 0.
  double ray_exit(const Vec2& x, const Vec2& dir) const;

  // Absolute distance from x to the boundary of the domain.
  double boundary_distance(const Vec2& x) const;
};

// Node-membership query region; geometrically the same shapes as a domain.
using QueryRegion = ConvexDomainSpec;

}  // namespace dma
