#include "dma/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dma {

double polygon_area(const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return 0;
  double s = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * s;
}

std::vector<Vec2> convex_hull_2d(std::vector<Vec2> pts, double eps) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() < b.y();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](const Vec2& a, const Vec2& b) {
                          return (a - b).cwiseAbs().maxCoeff() <= eps;
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& a,
                                 double c, double slack) {
  if (poly.empty()) return {};
  std::vector<Vec2> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& P = poly[i];
    const Vec2& Q = poly[(i + 1) % n];
    double dP = a.dot(P) - c;
    double dQ = a.dot(Q) - c;
    if (dP <= slack) out.push_back(P);
    if ((dP <= slack) != (dQ <= slack)) {
      double t = dP / (dP - dQ);  // intersection with the exact boundary
      out.push_back(P + t * (Q - P));
    }
  }
  return out;
}

std::vector<Vec2> prune_collinear(const std::vector<Vec2>& poly, double tol) {
  // Dedupe consecutive vertices (including the wrap-around pair) against the
  // surviving predecessor, then drop collinear middles until stable.
  std::vector<Vec2> v;
  for (const Vec2& p : poly)
    if (v.empty() || (p - v.back()).cwiseAbs().maxCoeff() > tol)
      v.push_back(p);
  while (v.size() > 1 && (v.front() - v.back()).cwiseAbs().maxCoeff() <= tol)
    v.pop_back();
  bool changed = v.size() >= 3;
  while (changed && v.size() >= 3) {
    changed = false;
    for (size_t i = 0; i < v.size(); ++i) {
      const Vec2& prev = v[(i + v.size() - 1) % v.size()];
      const Vec2& next = v[(i + 1) % v.size()];
      double l = (v[i] - prev).norm() * (next - v[i]).norm();
      if (l > 0 && std::abs(cross(prev, v[i], next)) <= tol * l) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

bool point_in_convex(const std::vector<Vec2>& poly, const Vec2& p,
                     double tol) {
  if (poly.empty()) return false;
  if (poly.size() == 1) return (p - poly[0]).norm() <= tol;
  if (poly.size() == 2) {
    Vec2 e = poly[1] - poly[0];
    double L = e.norm();
    if (L == 0) return (p - poly[0]).norm() <= tol;
    double s = std::clamp((p - poly[0]).dot(e) / (L * L), 0.0, 1.0);
    return (p - (poly[0] + s * e)).norm() <= tol;
  }
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 e = poly[(i + 1) % n] - poly[i];
    if (cross(poly[i], poly[(i + 1) % n], p) < -tol * e.norm()) return false;
  }
  return true;
}

double distance_to_convex(const std::vector<Vec2>& poly, const Vec2& p) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  if (point_in_convex(poly, p)) return 0;
  double d = std::numeric_limits<double>::infinity();
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    Vec2 e = b - a;
    double L2 = e.squaredNorm();
    Vec2 q = L2 > 0
                 ? Vec2(a + std::clamp((p - a).dot(e) / L2, 0.0, 1.0) * e)
                 : a;
    d = std::min(d, (p - q).norm());
  }
  return d;
}

double hausdorff(const std::vector<Vec2>& A, const std::vector<Vec2>& B) {
  if (A.empty() && B.empty()) return 0;
  if (A.empty() || B.empty())
    return std::numeric_limits<double>::infinity();
  double d = 0;
  for (const Vec2& a : A) d = std::max(d, distance_to_convex(B, a));
  for (const Vec2& b : B) d = std::max(d, distance_to_convex(A, b));
  return d;
}

double intersection_area(const std::vector<Vec2>& A,
                         const std::vector<Vec2>& B) {
  if (A.size() < 3 || B.size() < 3) return 0;
  std::vector<Vec2> poly = A;
  const size_t n = B.size();
  for (size_t i = 0; i < n && !poly.empty(); ++i) {
    Vec2 e = B[(i + 1) % n] - B[i];
    Vec2 nrm(e.y(), -e.x());  // outward normal of CCW polygon
    poly = clip_halfplane(poly, nrm, nrm.dot(B[i]), 0.0);
  }
  return polygon_area(poly);
}

}  // namespace dma
