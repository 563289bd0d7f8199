#include "dma/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "dma/polygon.hpp"

namespace dma {

namespace {

using Vec3 = Eigen::Vector3d;

std::int64_t ekey(int a, int b) {
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Incremental 3-D convex hull with a persistent directed-edge map.
// Coplanar-within-eps points are not inserted; extreme points coplanar with a
// face are reached through a strictly visible neighboring face.
class Hull3D {
 public:
  struct Tri {
    int a, b, c;
    Vec3 n;  // outward unit normal
    double d;
    bool alive = true;
  };

  Hull3D(const std::vector<Vec3>& pts, double eps) : pts_(pts), eps_(eps) {
    build();
  }

  bool planar() const { return planar_; }
  Vec3 plane_normal() const { return plane_n_; }
  double plane_offset() const { return plane_d_; }
  const std::vector<Tri>& tris() const { return tris_; }

 private:
  const std::vector<Vec3>& pts_;
  double eps_;
  std::vector<Tri> tris_;
  std::unordered_map<std::int64_t, int> edge_face_;
  Vec3 inner_ = Vec3::Zero();
  bool planar_ = false;
  Vec3 plane_n_ = Vec3::UnitZ();
  double plane_d_ = 0;
  std::vector<int> stamp_;
  int cur_stamp_ = 0;

  void add_face(int a, int b, int c, const Tri* plane_hint = nullptr) {
    Tri t{a, b, c, Vec3::Zero(), 0};
    Vec3 n = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    double ln = n.norm();
    if (plane_hint && ln <= eps_ * (pts_[b] - pts_[a]).norm()) {
      // Degenerate sliver: inherit the supporting plane of the neighbor so
      // visibility queries stay consistent.
      t.n = plane_hint->n;
      t.d = plane_hint->d;
    } else {
      n /= ln;
      double d = n.dot(pts_[a]);
      if (n.dot(inner_) > d) {
        std::swap(t.b, t.c);
        n = -n;
        d = -d;
      }
      t.n = n;
      t.d = d;
    }
    int idx = static_cast<int>(tris_.size());
    tris_.push_back(t);
    edge_face_[ekey(t.a, t.b)] = idx;
    edge_face_[ekey(t.b, t.c)] = idx;
    edge_face_[ekey(t.c, t.a)] = idx;
  }

  void build() {
    const int n = static_cast<int>(pts_.size());
    if (n < 3) throw DegenerateInput("lower_hull: fewer than 3 points");

    // Initial simplex: lexicographic min, then extent-maximizing picks.
    int p0 = 0;
    for (int i = 1; i < n; ++i) {
      const Vec3 &a = pts_[i], &b = pts_[p0];
      if (std::lexicographical_compare(a.data(), a.data() + 3, b.data(),
                                       b.data() + 3))
        p0 = i;
    }
    int p1 = -1;
    double best = 0;
    for (int i = 0; i < n; ++i) {
      double d = (pts_[i] - pts_[p0]).norm();
      if (d > best) best = d, p1 = i;
    }
    if (p1 < 0 || best <= eps_)
      throw DegenerateInput("lower_hull: all points coincide");
    int p2 = -1;
    best = 0;
    for (int i = 0; i < n; ++i) {
      double a = (pts_[i] - pts_[p0]).cross(pts_[p1] - pts_[p0]).norm();
      if (a > best) best = a, p2 = i;
    }
    if (p2 < 0 || best <= eps_ * (pts_[p1] - pts_[p0]).norm())
      throw DegenerateInput("lower_hull: all points collinear");

    Vec3 nrm = (pts_[p1] - pts_[p0]).cross(pts_[p2] - pts_[p0]).normalized();
    int p3 = -1;
    best = 0;
    for (int i = 0; i < n; ++i) {
      double v = std::abs(nrm.dot(pts_[i] - pts_[p0]));
      if (v > best) best = v, p3 = i;
    }
    if (p3 < 0 || best <= eps_) {
      planar_ = true;
      plane_n_ = nrm;
      plane_d_ = nrm.dot(pts_[p0]);
      return;
    }

    inner_ = 0.25 * (pts_[p0] + pts_[p1] + pts_[p2] + pts_[p3]);
    add_face(p0, p1, p2);
    add_face(p0, p1, p3);
    add_face(p0, p2, p3);
    add_face(p1, p2, p3);

    stamp_.assign(16, 0);
    for (int i = 0; i < n; ++i) {
      if (i == p0 || i == p1 || i == p2 || i == p3) continue;
      insert(i);
    }
  }

  bool visible(const Tri& t, const Vec3& p) const {
    return t.n.dot(p) - t.d > eps_;
  }

  void insert(int pi) {
    const Vec3& p = pts_[pi];
    ++cur_stamp_;
    if (stamp_.size() < tris_.size()) stamp_.resize(tris_.size() * 2, 0);

    std::vector<int> vis;
    for (int f = 0; f < static_cast<int>(tris_.size()); ++f)
      if (tris_[f].alive && visible(tris_[f], p)) {
        vis.push_back(f);
        stamp_[f] = cur_stamp_;
      }
    if (vis.empty()) return;

    // Horizon: directed edges of visible faces whose twin face is invisible.
    struct HEdge {
      int a, b, neighbor;
    };
    std::vector<HEdge> horizon;
    for (int f : vis) {
      const Tri& t = tris_[f];
      const int e[3][2] = {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
      for (auto& ed : e) {
        auto it = edge_face_.find(ekey(ed[1], ed[0]));
        int nb = (it == edge_face_.end()) ? -1 : it->second;
        if (nb < 0 || stamp_[static_cast<size_t>(nb)] != cur_stamp_)
          horizon.push_back({ed[0], ed[1], nb});
      }
    }
    for (int f : vis) {
      Tri& t = tris_[f];
      t.alive = false;
      edge_face_.erase(ekey(t.a, t.b));
      edge_face_.erase(ekey(t.b, t.c));
      edge_face_.erase(ekey(t.c, t.a));
    }
    for (const HEdge& he : horizon) {
      const Tri* hint = he.neighbor >= 0 ? &tris_[he.neighbor] : nullptr;
      add_face(he.a, he.b, pi, hint);
    }
    if (stamp_.size() < tris_.size()) stamp_.resize(tris_.size() * 2, 0);
  }
};

struct IdxPoint {
  Vec2 p;
  int id;
};

// Monotone chain over (point, id) pairs keeping ids; collinear dropped.
std::vector<IdxPoint> hull2d_indexed(std::vector<IdxPoint> pts, double eps) {
  std::sort(pts.begin(), pts.end(), [](const IdxPoint& a, const IdxPoint& b) {
    if (a.p.x() != b.p.x()) return a.p.x() < b.p.x();
    return a.p.y() < b.p.y();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](const IdxPoint& a, const IdxPoint& b) {
                          return (a.p - b.p).cwiseAbs().maxCoeff() <= eps;
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<IdxPoint> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2].p, hull[k - 1].p, pts[i].p) <= eps)
      --k;
    hull[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2].p, hull[k - 1].p, pts[i].p) <= eps)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool point_in_triangle(const std::array<Vec2, 3>& t, const Vec2& p,
                       double tol) {
  for (int i = 0; i < 3; ++i) {
    const Vec2& a = t[i];
    const Vec2& b = t[(i + 1) % 3];
    if (cross(a, b, p) < -tol * (b - a).norm()) return false;
  }
  return true;
}

}  // namespace

LowerHull lower_hull_points(const std::vector<Vec2>& pts,
                            const Eigen::VectorXd& vals, int dim) {
  const int n = static_cast<int>(pts.size());
  if (n != vals.size())
    throw DomainError("lower_hull: point/value count mismatch");
  if (n < dim + 1) throw DegenerateInput("lower_hull: too few points");

  LowerHull hull;
  hull.dim_ = dim;
  double cs = 0, vs = 0;
  for (int i = 0; i < n; ++i) {
    cs = std::max(cs, pts[i].cwiseAbs().maxCoeff());
    vs = std::max(vs, std::abs(vals[i]));
  }
  hull.coord_scale_ = std::max(cs, 1e-30);
  hull.tol_ = 1e-12 * std::max(cs, 1.0);

  if (dim == 1) {
    std::vector<IdxPoint> lifted(n);
    for (int i = 0; i < n; ++i) lifted[i] = {Vec2(pts[i].x(), vals[i]), i};
    std::sort(lifted.begin(), lifted.end(),
              [](const IdxPoint& a, const IdxPoint& b) {
                return a.p.x() < b.p.x();
              });
    const double eps = 1e-12 * std::max(1.0, cs + vs) * std::max(1.0, cs + vs);
    std::vector<IdxPoint> chain;
    for (const IdxPoint& q : lifted) {
      while (chain.size() >= 2 &&
             cross(chain[chain.size() - 2].p, chain.back().p, q.p) <= eps)
        chain.pop_back();
      chain.push_back(q);
    }
    if (chain.size() < 2) throw DegenerateInput("lower_hull: single abscissa");
    hull.is_vertex_.assign(n, 0);
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
      HullFace f;
      double x0 = chain[i].p.x(), x1 = chain[i + 1].p.x();
      double z0 = chain[i].p.y(), z1 = chain[i + 1].p.y();
      f.slope = Vec2((z1 - z0) / (x1 - x0), 0.0);
      f.offset = z0 - f.slope.x() * x0;
      f.verts = {chain[i].id, chain[i + 1].id, -1};
      f.corner = {Vec2(x0, 0), Vec2(x1, 0), Vec2(0, 0)};
      hull.faces_.push_back(f);
      hull.is_vertex_[chain[i].id] = 1;
      hull.is_vertex_[chain[i + 1].id] = 1;
      hull.breaks_.push_back(x0);
    }
    hull.breaks_.push_back(chain.back().p.x());
    for (int i = 0; i < n; ++i)
      if (hull.is_vertex_[i]) hull.vertex_nodes_.push_back(i);
    return hull;
  }

  // dim == 2: lower faces of the lifted 3-D hull.
  std::vector<Vec3> lifted(n);
  for (int i = 0; i < n; ++i) lifted[i] = Vec3(pts[i].x(), pts[i].y(), vals[i]);
  const double eps = 1e-12 * std::max(1.0, cs + vs);
  Hull3D h3(lifted, eps);

  struct RawFace {
    Vec2 slope;
    double offset;
    std::array<int, 3> v;
  };
  std::vector<RawFace> raw;

  if (h3.planar()) {
    Vec3 m = h3.plane_normal();
    if (std::abs(m.z()) <= 1e-12)
      throw DegenerateInput("lower_hull: points affinely dependent in R^2");
    Vec2 slope(-m.x() / m.z(), -m.y() / m.z());
    double offset = h3.plane_offset() / m.z();
    std::vector<IdxPoint> ip(n);
    for (int i = 0; i < n; ++i) ip[i] = {pts[i], i};
    auto poly = hull2d_indexed(std::move(ip), 1e-12 * std::max(1.0, cs));
    if (poly.size() < 3)
      throw DegenerateInput("lower_hull: points affinely dependent in R^2");
    for (size_t i = 1; i + 1 < poly.size(); ++i)
      raw.push_back({slope, offset, {poly[0].id, poly[i].id, poly[i + 1].id}});
  } else {
    for (const auto& t : h3.tris()) {
      if (!t.alive) continue;
      if (t.n.z() >= -1e-12) continue;  // keep downward faces only
      Vec2 slope(-t.n.x() / t.n.z(), -t.n.y() / t.n.z());
      double offset = lifted[t.a].z() - slope.dot(pts[t.a]);
      // Projected orientation: make the triangle CCW in the plane.
      std::array<int, 3> v{t.a, t.b, t.c};
      if (cross(pts[v[0]], pts[v[1]], pts[v[2]]) < 0) std::swap(v[1], v[2]);
      if (std::abs(cross(pts[v[0]], pts[v[1]], pts[v[2]])) <=
          1e-20 * std::max(1.0, cs * cs))
        continue;  // degenerate sliver
      raw.push_back({slope, offset, v});
    }
    if (raw.empty()) throw DegenerateInput("lower_hull: no lower faces");

    // Merge coplanar neighbors, then re-triangulate each merged region by a
    // fan from its lexicographically smallest vertex.
    double ss = 0;
    for (auto& f : raw) ss = std::max(ss, f.slope.cwiseAbs().maxCoeff());
    const double tol_s = 1e-9 * (1.0 + ss);
    const double tol_b = 1e-9 * (1.0 + vs + ss * cs);
    std::unordered_map<std::int64_t, int> edge_owner;
    for (int f = 0; f < static_cast<int>(raw.size()); ++f)
      for (int k = 0; k < 3; ++k)
        edge_owner[ekey(raw[f].v[k], raw[f].v[(k + 1) % 3])] = f;
    UnionFind uf(static_cast<int>(raw.size()));
    for (int f = 0; f < static_cast<int>(raw.size()); ++f)
      for (int k = 0; k < 3; ++k) {
        auto it = edge_owner.find(ekey(raw[f].v[(k + 1) % 3], raw[f].v[k]));
        if (it == edge_owner.end()) continue;
        int g = it->second;
        if ((raw[f].slope - raw[g].slope).cwiseAbs().maxCoeff() <= tol_s &&
            std::abs(raw[f].offset - raw[g].offset) <= tol_b)
          uf.unite(f, g);
      }
    std::unordered_map<int, std::vector<int>> groups;
    for (int f = 0; f < static_cast<int>(raw.size()); ++f)
      groups[uf.find(f)].push_back(f);

    std::vector<RawFace> merged;
    for (auto& [root, members] : groups) {
      if (members.size() == 1) {
        merged.push_back(raw[members[0]]);
        continue;
      }
      std::vector<IdxPoint> vp;
      double area_best = -1;
      int rep = members[0];
      for (int f : members) {
        for (int vid : raw[f].v) vp.push_back({pts[vid], vid});
        double a = std::abs(cross(pts[raw[f].v[0]], pts[raw[f].v[1]],
                                  pts[raw[f].v[2]]));
        if (a > area_best) area_best = a, rep = f;
      }
      auto poly = hull2d_indexed(std::move(vp), 1e-12 * std::max(1.0, cs));
      if (poly.size() < 3) continue;
      // Lexicographically smallest vertex is first after the sort inside
      // hull2d_indexed only by construction of the chain; rotate to it.
      size_t lo = 0;
      for (size_t i = 1; i < poly.size(); ++i) {
        if (poly[i].p.x() < poly[lo].p.x() ||
            (poly[i].p.x() == poly[lo].p.x() && poly[i].p.y() < poly[lo].p.y()))
          lo = i;
      }
      std::rotate(poly.begin(), poly.begin() + lo, poly.end());
      for (size_t i = 1; i + 1 < poly.size(); ++i)
        merged.push_back({raw[rep].slope, raw[rep].offset,
                          {poly[0].id, poly[i].id, poly[i + 1].id}});
    }
    raw = std::move(merged);
  }

  std::sort(raw.begin(), raw.end(), [](const RawFace& a, const RawFace& b) {
    if (a.slope.x() != b.slope.x()) return a.slope.x() < b.slope.x();
    if (a.slope.y() != b.slope.y()) return a.slope.y() < b.slope.y();
    if (a.offset != b.offset) return a.offset < b.offset;
    return a.v < b.v;
  });

  hull.is_vertex_.assign(n, 0);
  for (const RawFace& f : raw) {
    HullFace hf;
    hf.slope = f.slope;
    hf.offset = f.offset;
    hf.verts = f.v;
    hf.corner = {pts[f.v[0]], pts[f.v[1]], pts[f.v[2]]};
    hull.faces_.push_back(hf);
    for (int vid : f.v) hull.is_vertex_[vid] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (hull.is_vertex_[i]) hull.vertex_nodes_.push_back(i);

  // Location grid over face bounding boxes.
  Vec2 lo(1e300, 1e300), hi(-1e300, -1e300);
  double area_sum = 0;
  for (const HullFace& f : hull.faces_) {
    for (const Vec2& c : f.corner) {
      lo = lo.cwiseMin(c);
      hi = hi.cwiseMax(c);
    }
    area_sum += 0.5 * std::abs(cross(f.corner[0], f.corner[1], f.corner[2]));
  }
  double cell = std::sqrt(std::max(area_sum, 1e-30) /
                          std::max<size_t>(hull.faces_.size(), 1)) *
                2.0;
  hull.grid_lo_ = lo;
  hull.grid_cell_ = std::max(cell, 1e-12);
  hull.grid_nx_ = std::max(
      1, static_cast<int>((hi.x() - lo.x()) / hull.grid_cell_) + 1);
  hull.grid_ny_ = std::max(
      1, static_cast<int>((hi.y() - lo.y()) / hull.grid_cell_) + 1);
  hull.grid_bins_.assign(
      static_cast<size_t>(hull.grid_nx_) * hull.grid_ny_, {});
  auto bin_range = [&](const Vec2& a, const Vec2& b, int& i0, int& i1, int& j0,
                       int& j1) {
    i0 = std::clamp(
        static_cast<int>((a.x() - lo.x()) / hull.grid_cell_), 0,
        hull.grid_nx_ - 1);
    i1 = std::clamp(
        static_cast<int>((b.x() - lo.x()) / hull.grid_cell_), 0,
        hull.grid_nx_ - 1);
    j0 = std::clamp(
        static_cast<int>((a.y() - lo.y()) / hull.grid_cell_), 0,
        hull.grid_ny_ - 1);
    j1 = std::clamp(
        static_cast<int>((b.y() - lo.y()) / hull.grid_cell_), 0,
        hull.grid_ny_ - 1);
  };
  for (int f = 0; f < static_cast<int>(hull.faces_.size()); ++f) {
    Vec2 a = hull.faces_[f].corner[0], b = a;
    for (const Vec2& c : hull.faces_[f].corner) {
      a = a.cwiseMin(c);
      b = b.cwiseMax(c);
    }
    int i0, i1, j0, j1;
    bin_range(a, b, i0, i1, j0, j1);
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j)
        hull.grid_bins_[static_cast<size_t>(j) * hull.grid_nx_ + i].push_back(
            f);
  }
  return hull;
}

std::vector<int> LowerHull::faces_at(const Vec2& x) const {
  std::vector<int> out;
  const double tol = 1e-9 * std::max(1.0, coord_scale_);
  if (dim_ == 1) {
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
      if (x.x() >= faces_[f].corner[0].x() - tol &&
          x.x() <= faces_[f].corner[1].x() + tol)
        out.push_back(f);
    }
    return out;
  }
  if (grid_nx_ == 0) return out;
  int i = std::clamp(static_cast<int>((x.x() - grid_lo_.x()) / grid_cell_), 0,
                     grid_nx_ - 1);
  int j = std::clamp(static_cast<int>((x.y() - grid_lo_.y()) / grid_cell_), 0,
                     grid_ny_ - 1);
  for (int f : grid_bins_[static_cast<size_t>(j) * grid_nx_ + i])
    if (point_in_triangle(faces_[f].corner, x, tol)) out.push_back(f);
  return out;
}

double LowerHull::eval(const Vec2& x) const {
  if (dim_ == 1) {
    if (x.x() < breaks_.front() - tol_ || x.x() > breaks_.back() + tol_)
      throw OutsideHull("gamma_eval: point outside conv of nodes");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x.x());
    size_t f = std::min<size_t>(
        faces_.size() - 1,
        it == breaks_.begin() ? 0 : (it - breaks_.begin()) - 1);
    return faces_[f].slope.x() * x.x() + faces_[f].offset;
  }
  if (grid_nx_ > 0) {
    int i = std::clamp(static_cast<int>((x.x() - grid_lo_.x()) / grid_cell_),
                       0, grid_nx_ - 1);
    int j = std::clamp(static_cast<int>((x.y() - grid_lo_.y()) / grid_cell_),
                       0, grid_ny_ - 1);
    for (int f : grid_bins_[static_cast<size_t>(j) * grid_nx_ + i])
      if (point_in_triangle(faces_[f].corner, x, tol_))
        return faces_[f].slope.dot(x) + faces_[f].offset;
  }
  throw OutsideHull("gamma_eval: point outside conv of nodes");
}

double LowerHull::extension_eval(const Vec2& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const HullFace& f : faces_)
    best = std::max(best, f.slope.dot(x) + f.offset);
  return best;
}

void LowerHull::dump(std::ostream& os) const {
  os.precision(17);
  for (const HullFace& f : faces_) {
    os << "F " << f.slope.x();
    if (dim_ == 2) os << ' ' << f.slope.y();
    os << ' ' << f.offset << ' ' << f.verts[0] << ' ' << f.verts[1];
    if (dim_ == 2) os << ' ' << f.verts[2];
    os << '\n';
  }
}

ContactSet contact_set(const MeshFunction& u, const LowerHull& hull) {
  ContactSet cs;
  const LatticeDomain& dom = u.dom();
  cs.mask.assign(dom.num_nodes(), 0);
  const double tol = 1e-9 * std::max(1.0, u.value_scale());
  for (int id = 0; id < dom.num_interior(); ++id) {
    double g = hull.eval(dom.node(id));
    if (std::abs(g - u(id)) <= tol) {
      cs.mask[id] = 1;
      cs.nodes.push_back(id);
    }
  }
  return cs;
}

double boundary_envelope_eval(const std::vector<Vec2>& boundary_samples,
                              const Eigen::VectorXd& g_values, const Vec2& x,
                              int dim) {
  LowerHull hull = lower_hull_points(boundary_samples, g_values, dim);
  try {
    return hull.eval(x);
  } catch (const OutsideHull&) {
    throw UnboundedEnvelope(
        "boundary_envelope_eval: point outside conv of the samples");
  }
}

}  // namespace dma
