#include "dma/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "dma/polygon.hpp"

namespace dma {

namespace {

// Collapse a near-degenerate polygon to its diameter pair / a point.
SlopeCell collapse_degenerate(std::vector<Vec2> verts, double tol) {
  SlopeCell c;
  c.dim = 2;
  if (verts.empty()) return c;
  size_t ai = 0, bi = 0;
  double best = -1;
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i; j < verts.size(); ++j) {
      double d = (verts[i] - verts[j]).norm();
      if (d > best) best = d, ai = i, bi = j;
    }
  if (best <= tol) {
    c.verts = {verts[ai]};
  } else {
    Vec2 a = verts[ai], b = verts[bi];
    if (b.x() < a.x() || (b.x() == a.x() && b.y() < a.y())) std::swap(a, b);
    c.verts = {a, b};
  }
  return c;
}

}  // namespace

SlopeCell discrete_subdifferential(const MeshFunction& u, int interior_id) {
  const LatticeDomain& dom = u.dom();
  const Vec2 x = dom.node(interior_id);
  const double ux = u(interior_id);
  SlopeCell cell;
  cell.dim = dom.dim();
  const double pmax = 2.0 * u.lipschitz_ratio_max() + 1.0;
  const double slack = 1e-12 * (1.0 + pmax);

  if (dom.dim() == 1) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int id = 0; id < dom.num_nodes(); ++id) {
      if (id == interior_id) continue;
      double dx = dom.node(id).x() - x.x();
      if (dx == 0) continue;
      double s = (u(id) - ux) / dx;
      if (dx > 0)
        hi = std::min(hi, s);
      else
        lo = std::max(lo, s);
    }
    if (lo > hi + slack) return cell;  // empty
    if (lo > hi) {
      cell.verts = {Vec2(0.5 * (lo + hi), 0)};
    } else if (hi - lo <= 1e-14 * (1.0 + pmax)) {
      cell.verts = {Vec2(0.5 * (lo + hi), 0)};
    } else {
      cell.verts = {Vec2(lo, 0), Vec2(hi, 0)};
    }
    return cell;
  }

  std::vector<Vec2> poly = {Vec2(-pmax, -pmax), Vec2(pmax, -pmax),
                            Vec2(pmax, pmax), Vec2(-pmax, pmax)};
  for (int id = 0; id < dom.num_nodes() && !poly.empty(); ++id) {
    if (id == interior_id) continue;
    Vec2 a = dom.node(id) - x;
    double L = a.norm();
    if (L == 0) continue;
    poly = clip_halfplane(poly, a / L, (u(id) - ux) / L, slack);
  }
  if (poly.empty()) return cell;

  std::vector<Vec2> pruned = prune_collinear(poly, 1e-10);
  if (pruned.size() >= 3 && std::abs(polygon_area(pruned)) > 1e-16) {
    cell.verts = std::move(pruned);
    return cell;
  }
  return collapse_degenerate(poly, 1e-10);
}

SlopeCell hull_normal_cell(const LowerHull& hull, const Vec2& x) {
  SlopeCell cell;
  cell.dim = hull.dim();
  std::vector<Vec2> slopes;
  for (int f : hull.faces_at(x)) {
    const Vec2& s = hull.faces()[f].slope;
    bool dup = false;
    for (const Vec2& t : slopes)
      if ((s - t).cwiseAbs().maxCoeff() <= 1e-10) {
        dup = true;
        break;
      }
    if (!dup) slopes.push_back(s);
  }
  if (slopes.empty()) return cell;

  if (hull.dim() == 1) {
    double lo = slopes[0].x(), hi = slopes[0].x();
    for (const Vec2& s : slopes) {
      lo = std::min(lo, s.x());
      hi = std::max(hi, s.x());
    }
    if (hi - lo <= 1e-14)
      cell.verts = {Vec2(0.5 * (lo + hi), 0)};
    else
      cell.verts = {Vec2(lo, 0), Vec2(hi, 0)};
    return cell;
  }
  if (slopes.size() <= 2) return collapse_degenerate(slopes, 1e-10);
  std::vector<Vec2> hull2 = convex_hull_2d(slopes, 1e-12);
  if (hull2.size() >= 3 && std::abs(polygon_area(hull2)) > 1e-16) {
    cell.verts = std::move(hull2);
    return cell;
  }
  return collapse_degenerate(slopes, 1e-10);
}

double cell_volume(const SlopeCell& c) {
  if (c.dim == 1) return c.verts.size() == 2 ? c.hi() - c.lo() : 0.0;
  return c.verts.size() >= 3 ? polygon_area(c.verts) : 0.0;
}

CellPair equivalence_check(const MeshFunction& u, const LowerHull& hull,
                           int interior_id) {
  CellPair pair;
  pair.node = interior_id;
  const Vec2 x = u.dom().node(interior_id);
  pair.direct_cell = discrete_subdifferential(u, interior_id);
  pair.hull_cell = hull_normal_cell(hull, x);

  const double contact_tol = 1e-9 * std::max(1.0, u.value_scale());
  const bool contact = std::abs(hull.eval(x) - u(interior_id)) <= contact_tol;

  if (contact) {
    double ss = 1.0;
    for (const Vec2& v : pair.direct_cell.verts)
      ss = std::max(ss, v.cwiseAbs().maxCoeff());
    for (const Vec2& v : pair.hull_cell.verts)
      ss = std::max(ss, v.cwiseAbs().maxCoeff());
    pair.hausdorff = hausdorff(pair.direct_cell.verts, pair.hull_cell.verts);
    pair.equal = pair.hausdorff <= 1e-8 * ss;
    if (!pair.equal)
      throw EquivalenceViolation(
          "equivalence_check: contact-node cells differ", pair);
  } else {
    pair.equal = pair.direct_cell.empty();
    pair.hausdorff = 0;
    if (!pair.equal)
      throw EquivalenceViolation(
          "equivalence_check: non-contact node has nonempty cell", pair);
  }
  return pair;
}

void dump_cell(std::ostream& os, int node, const SlopeCell& c) {
  os.precision(17);
  os << "C " << node << ' ' << c.verts.size();
  for (const Vec2& v : c.verts) os << ' ' << v.x() << ' ' << v.y();
  os << '\n';
}

}  // namespace dma
