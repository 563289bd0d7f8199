#include "dma/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "dma/polygon.hpp"

namespace dma {

DensitySpec DensitySpec::callable(std::function<double(const Vec2&)> f) {
  DensitySpec d;
  d.kind = Kind::Callable;
  d.fn = std::move(f);
  return d;
}

DensitySpec DensitySpec::rational_quadratic(double c) {
  if (c < 0) throw DomainError("rational_quadratic: c must be >= 0");
  DensitySpec d;
  d.kind = Kind::RationalQuadratic;
  d.c = c;
  return d;
}

double DensitySpec::operator()(const Vec2& p) const {
  double v;
  switch (kind) {
    case Kind::Unit:
      return 1.0;
    case Kind::RationalQuadratic:
      return 1.0 / (1.0 + c * p.squaredNorm());
    default:
      v = fn(p);
  }
  if (!(v >= 0)) throw DomainError("density: R(p) < 0 or non-finite");
  return v;
}

namespace {

// Radon's 7-point degree-5 rule on a triangle (barycentric points/weights).
struct TriRule {
  std::array<Vec2, 7> bary2;  // (b1, b2); b0 = 1 - b1 - b2
  std::array<double, 7> w;
};

const TriRule& tri_rule() {
  static const TriRule rule = [] {
    TriRule r;
    const double s15 = std::sqrt(15.0);
    const double a = (6.0 - s15) / 21.0, wa = (155.0 - s15) / 1200.0;
    const double b = (6.0 + s15) / 21.0, wb = (155.0 + s15) / 1200.0;
    r.bary2 = {Vec2(1.0 / 3, 1.0 / 3), Vec2(a, a),         Vec2(1 - 2 * a, a),
               Vec2(a, 1 - 2 * a),     Vec2(b, b),         Vec2(1 - 2 * b, b),
               Vec2(b, 1 - 2 * b)};
    r.w = {9.0 / 40, wa, wa, wa, wb, wb, wb};
    return r;
  }();
  return rule;
}

double integrate_triangle(const Vec2& A, const Vec2& B, const Vec2& C,
                          const DensitySpec& R, int level) {
  if (level == 0) {
    double area = 0.5 * std::abs(cross(A, B, C));
    if (area == 0) return 0;
    const TriRule& rule = tri_rule();
    double s = 0;
    for (int i = 0; i < 7; ++i) {
      double b1 = rule.bary2[i].x(), b2 = rule.bary2[i].y();
      Vec2 p = (1 - b1 - b2) * A + b1 * B + b2 * C;
      s += rule.w[i] * R(p);
    }
    return s * area;
  }
  Vec2 AB = 0.5 * (A + B), BC = 0.5 * (B + C), CA = 0.5 * (C + A);
  return integrate_triangle(A, AB, CA, R, level - 1) +
         integrate_triangle(AB, B, BC, R, level - 1) +
         integrate_triangle(CA, BC, C, R, level - 1) +
         integrate_triangle(AB, BC, CA, R, level - 1);
}

double integrate_cell(const SlopeCell& cell, const DensitySpec& R) {
  if (cell.dim == 1) {
    if (cell.verts.size() < 2) return 0;
    double lo = cell.lo(), hi = cell.hi();
    // 3-point Gauss-Legendre per subinterval, dyadic refinement.
    const double gx[3] = {-std::sqrt(3.0 / 5.0), 0.0, std::sqrt(3.0 / 5.0)};
    const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    auto level_value = [&](int pieces) {
      double s = 0;
      double w = (hi - lo) / pieces;
      for (int k = 0; k < pieces; ++k) {
        double m = lo + (k + 0.5) * w;
        for (int i = 0; i < 3; ++i)
          s += 0.5 * w * gw[i] * R(Vec2(m + 0.5 * w * gx[i], 0));
      }
      return s;
    };
    double prev = level_value(4), cur = level_value(8);
    if (std::abs(cur - prev) > 1e-6 * std::max(1.0, std::abs(cur)))
      throw QuadratureNotConverged("ma_weight: 1-D quadrature not converged");
    return cur;
  }
  if (cell.verts.size() < 3) return 0;
  Vec2 centroid = Vec2::Zero();
  for (const Vec2& v : cell.verts) centroid += v;
  centroid /= static_cast<double>(cell.verts.size());
  const int L = 3;
  auto level_value = [&](int level) {
    double s = 0;
    const size_t n = cell.verts.size();
    for (size_t i = 0; i < n; ++i)
      s += integrate_triangle(centroid, cell.verts[i],
                              cell.verts[(i + 1) % n], R, level);
    return s;
  };
  double prev = level_value(L - 1), cur = level_value(L);
  if (std::abs(cur - prev) > 1e-6 * std::max(1.0, std::abs(cur)))
    throw QuadratureNotConverged("ma_weight: quadrature not converged");
  return cur;
}

bool is_contact(const MeshFunction& u, const LowerHull& hull, int id) {
  const double tol = 1e-9 * std::max(1.0, u.value_scale());
  return std::abs(hull.eval(u.dom().node(id)) - u(id)) <= tol;
}

}  // namespace

double ma_weight(const MeshFunction& u, const LowerHull& hull, int interior_id,
                 const DensitySpec& R) {
  if (!is_contact(u, hull, interior_id)) return 0;
  SlopeCell cell = hull_normal_cell(hull, u.dom().node(interior_id));
  if (R.kind == DensitySpec::Kind::Unit) return cell_volume(cell);
  return integrate_cell(cell, R);
}

AtomicMeasure compute_weights(const MeshFunction& u, const LowerHull& hull,
                              const DensitySpec& R) {
  AtomicMeasure m;
  m.dom = u.dom_ptr();
  m.density = R;
  m.weights.resize(u.dom().num_interior());
  for (int id = 0; id < u.dom().num_interior(); ++id)
    m.weights[id] = ma_weight(u, hull, id, R);
  return m;
}

void AtomicMeasure::dump_csv(std::ostream& os) const {
  os.precision(17);
  for (int id = 0; id < dom->num_interior(); ++id) {
    os << id << ',' << dom->node(id).x();
    if (dom->dim() == 2) os << ',' << dom->node(id).y();
    os << ',' << weights[id] << '\n';
  }
}

double measure_of_region(const AtomicMeasure& m, const QueryRegion& E) {
  double s = 0;
  for (int id = 0; id < m.dom->num_interior(); ++id)
    if (E.contains_closure(m.dom->node(id), 1e-12)) s += m.weights[id];
  return s;
}

double total_mass(const MeshFunction& u, const LowerHull& hull) {
  double s = 0;
  for (int id = 0; id < u.dom().num_interior(); ++id)
    if (is_contact(u, hull, id))
      s += cell_volume(hull_normal_cell(hull, u.dom().node(id)));
  return s;
}

AbpReport abp_check(const MeshFunction& u, const LowerHull& hull) {
  const LatticeDomain& dom = u.dom();
  for (int id = dom.num_interior(); id < dom.num_nodes(); ++id)
    if (u(id) < -1e-12)
      throw BoundaryNotNonnegative("abp_check: negative boundary value");
  AbpReport rep;
  rep.mass = total_mass(u, hull);
  const double diam = dom.spec().diameter();
  const int d = dom.dim();
  for (int id = 0; id < dom.num_interior(); ++id) {
    if (u(id) >= 0) continue;
    double dist = dom.spec().boundary_distance(dom.node(id));
    double denom = std::pow(diam, d - 1) * dist * rep.mass;
    rep.max_ratio =
        std::max(rep.max_ratio, std::pow(-u(id), d) / denom);
  }
  return rep;
}

double oberman_operator(const MeshFunction& u, int interior_id, int r_W) {
  const int d = u.dom().dim();
  if (r_W < 1) throw DomainError("oberman_operator: r_W must be >= 1");
  if (d == 1) return std::max(delta_e(u, interior_id, IVec2(1, 0)), 0.0);

  double best = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= r_W; ++p)
    for (int q = 0; q <= r_W; ++q) {
      if (std::gcd(p, q) != 1) continue;
      IVec2 e(p, q), f(-q, p);
      double n2 = static_cast<double>(p) * p + static_cast<double>(q) * q;
      double v = std::max(delta_e(u, interior_id, e), 0.0) / n2 *
                 (std::max(delta_e(u, interior_id, f), 0.0) / n2);
      best = std::min(best, v);
    }
  return best;
}

}  // namespace dma
