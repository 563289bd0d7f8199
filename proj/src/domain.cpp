#include "dma/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dma {

ConvexDomainSpec ConvexDomainSpec::segment(double a, double b) {
  ConvexDomainSpec s;
  s.kind = DomainKind::Box;
  s.dim = 1;
  s.lo = Vec2(a, 0.0);
  s.hi = Vec2(b, 0.0);
  if (!(a < b)) throw DomainError("segment: need a < b");
  return s;
}

ConvexDomainSpec ConvexDomainSpec::box(const Vec2& lo, const Vec2& hi) {
  ConvexDomainSpec s;
  s.kind = DomainKind::Box;
  s.dim = 2;
  s.lo = lo;
  s.hi = hi;
  if (!(lo.x() < hi.x() && lo.y() < hi.y()))
    throw DomainError("box: need lo < hi componentwise");
  return s;
}

ConvexDomainSpec ConvexDomainSpec::ball(const Vec2& center, double radius) {
  ConvexDomainSpec s;
  s.kind = DomainKind::Ball;
  s.dim = 2;
  s.center = center;
  s.radius = radius;
  if (!(radius > 0)) throw DomainError("ball: need radius > 0");
  return s;
}

static double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

ConvexDomainSpec ConvexDomainSpec::polygon(std::vector<Vec2> verts) {
  ConvexDomainSpec s;
  s.kind = DomainKind::Polygon;
  s.dim = 2;
  if (verts.size() < 3) throw DomainError("polygon: need >= 3 vertices");
  const size_t n = verts.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = verts[(i + 1) % n] - verts[i];
    Vec2 b = verts[(i + 2) % n] - verts[(i + 1) % n];
    if (!(cross2(a, b) > 0))
      throw DomainError("polygon: vertices must be strictly convex CCW");
  }
  s.vertices = std::move(verts);
  return s;
}

bool ConvexDomainSpec::contains(const Vec2& x) const {
  switch (kind) {
    case DomainKind::Box:
      if (dim == 1) return lo.x() < x.x() && x.x() < hi.x();
      return lo.x() < x.x() && x.x() < hi.x() && lo.y() < x.y() &&
             x.y() < hi.y();
    case DomainKind::Ball:
      return (x - center).norm() < radius;
    case DomainKind::Polygon: {
      const size_t n = vertices.size();
      for (size_t i = 0; i < n; ++i) {
        Vec2 e = vertices[(i + 1) % n] - vertices[i];
        if (!(cross2(e, x - vertices[i]) > 0)) return false;
      }
      return true;
    }
  }
  return false;
}

bool ConvexDomainSpec::contains_closure(const Vec2& x, double tol) const {
  switch (kind) {
    case DomainKind::Box:
      if (dim == 1) return lo.x() - tol <= x.x() && x.x() <= hi.x() + tol;
      return lo.x() - tol <= x.x() && x.x() <= hi.x() + tol &&
             lo.y() - tol <= x.y() && x.y() <= hi.y() + tol;
    case DomainKind::Ball:
      return (x - center).norm() <= radius + tol;
    case DomainKind::Polygon: {
      const size_t n = vertices.size();
      for (size_t i = 0; i < n; ++i) {
        Vec2 e = vertices[(i + 1) % n] - vertices[i];
        if (cross2(e, x - vertices[i]) < -tol * e.norm()) return false;
      }
      return true;
    }
  }
  return false;
}

double ConvexDomainSpec::diameter() const {
  switch (kind) {
    case DomainKind::Box:
      if (dim == 1) return hi.x() - lo.x();
      return (hi - lo).norm();
    case DomainKind::Ball:
      return 2 * radius;
    case DomainKind::Polygon: {
      double d2 = 0;
      for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
          d2 = std::max(d2, (vertices[i] - vertices[j]).squaredNorm());
      return std::sqrt(d2);
    }
  }
  return 0;
}

void ConvexDomainSpec::bounding_box(Vec2& blo, Vec2& bhi) const {
  switch (kind) {
    case DomainKind::Box:
      blo = lo;
      bhi = hi;
      return;
    case DomainKind::Ball:
      blo = center - Vec2(radius, radius);
      bhi = center + Vec2(radius, radius);
      return;
    case DomainKind::Polygon:
      blo = Vec2(std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity());
      bhi = -blo;
      for (const Vec2& v : vertices) {
        blo = blo.cwiseMin(v);
        bhi = bhi.cwiseMax(v);
      }
      return;
  }
}

double ConvexDomainSpec::ray_exit(const Vec2& x, const Vec2& dir) const {
  const double inf = std::numeric_limits<double>::infinity();
  double t = inf;
  switch (kind) {
    case DomainKind::Box: {
      for (int c = 0; c < dim; ++c) {
        if (dir[c] > 0)
          t = std::min(t, (hi[c] - x[c]) / dir[c]);
        else if (dir[c] < 0)
          t = std::min(t, (lo[c] - x[c]) / dir[c]);
      }
      break;
    }
    case DomainKind::Ball: {
      // || (x - c) + t dir ||^2 = r^2, take the nonnegative root.
      Vec2 w = x - center;
      double a = dir.squaredNorm();
      double b = w.dot(dir);
      double c = w.squaredNorm() - radius * radius;
      double disc = b * b - a * c;
      if (disc < 0) disc = 0;
      t = (-b + std::sqrt(disc)) / a;
      break;
    }
    case DomainKind::Polygon: {
      const size_t n = vertices.size();
      for (size_t i = 0; i < n; ++i) {
        Vec2 e = vertices[(i + 1) % n] - vertices[i];
        Vec2 nrm(e.y(), -e.x());  // outward for CCW
        double dn = nrm.dot(dir);
        if (dn > 0) t = std::min(t, nrm.dot(vertices[i] - x) / dn);
      }
      break;
    }
  }
  return std::max(t, 0.0);
}

double ConvexDomainSpec::boundary_distance(const Vec2& x) const {
  switch (kind) {
    case DomainKind::Box: {
      if (dim == 1)
        return std::min(std::abs(x.x() - lo.x()), std::abs(hi.x() - x.x()));
      double d = std::abs(x.x() - lo.x());
      d = std::min(d, std::abs(hi.x() - x.x()));
      d = std::min(d, std::abs(x.y() - lo.y()));
      d = std::min(d, std::abs(hi.y() - x.y()));
      return d;
    }
    case DomainKind::Ball:
      return std::abs(radius - (x - center).norm());
    case DomainKind::Polygon: {
      double d = std::numeric_limits<double>::infinity();
      const size_t n = vertices.size();
      for (size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[(i + 1) % n];
        Vec2 e = b - a;
        double s = std::clamp((x - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
        d = std::min(d, (x - (a + s * e)).norm());
      }
      return d;
    }
  }
  return 0;
}

}  // namespace dma
