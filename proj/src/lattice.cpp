#include "dma/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace dma {

DirectionSet DirectionSet::make(int dim, int radius) {
  if (radius < 1) throw DomainError("DirectionSet: radius must be >= 1");
  DirectionSet V;
  V.radius = radius;
  if (dim == 1) {
    V.directions.push_back(IVec2(1, 0));
    V.directions.push_back(IVec2(-1, 0));
    return V;
  }
  for (int i = -radius; i <= radius; ++i)
    for (int j = -radius; j <= radius; ++j) {
      if (i == 0 && j == 0) continue;
      if (std::gcd(std::abs(i), std::abs(j)) != 1) continue;
      V.directions.push_back(IVec2(i, j));
    }
  // Canonical order: basis vectors first, then lexicographic.
  std::sort(V.directions.begin(), V.directions.end(),
            [](const IVec2& a, const IVec2& b) {
              int na = std::max(std::abs(a.x()), std::abs(a.y()));
              int nb = std::max(std::abs(b.x()), std::abs(b.y()));
              if (na != nb) return na < nb;
              if (a.x() != b.x()) return a.x() < b.x();
              return a.y() < b.y();
            });
  return V;
}

int DirectionSet::find(const IVec2& e) const {
  for (size_t i = 0; i < directions.size(); ++i)
    if (directions[i] == e) return static_cast<int>(i);
  return -1;
}

std::vector<int> DirectionSet::representatives() const {
  std::vector<int> reps;
  for (size_t i = 0; i < directions.size(); ++i) {
    const IVec2& e = directions[i];
    if (e.x() > 0 || (e.x() == 0 && e.y() > 0)) reps.push_back(static_cast<int>(i));
  }
  return reps;
}

namespace {

std::int64_t pack(const IVec2& k) {
  return (static_cast<std::int64_t>(k.x()) << 32) ^
         static_cast<std::int64_t>(static_cast<std::uint32_t>(k.y()));
}

}  // namespace

LatticeDomain::LatticeDomain(ConvexDomainSpec spec, double h, DirectionSet V)
    : spec_(std::move(spec)), h_(h), V_(std::move(V)) {
  if (!(h > 0)) throw DomainError("LatticeDomain: h must be positive");

  Vec2 blo, bhi;
  spec_.bounding_box(blo, bhi);
  const int dim = spec_.dim;

  auto index_range = [&](int c, int& k0, int& k1) {
    k0 = static_cast<int>(std::ceil(blo[c] / h - 1e-9));
    k1 = static_cast<int>(std::floor(bhi[c] / h + 1e-9));
  };
  int i0, i1, j0 = 0, j1 = 0;
  index_range(0, i0, i1);
  if (dim == 2) index_range(1, j0, j1);

  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) {
      Vec2 x(i * h, dim == 2 ? j * h : 0.0);
      if (spec_.contains(x)) {
        IVec2 k(i, j);
        interior_index_[pack(k)] = static_cast<int>(nodes_.size());
        nodes_.push_back(x);
        coords_.push_back(k);
      }
    }
  n_interior_ = static_cast<int>(nodes_.size());
  if (n_interior_ == 0) throw EmptyInterior("LatticeDomain: no interior nodes");

  // Boundary nodes: endpoints of stencil rays that leave the open domain,
  // deduplicated by coordinate snapping.
  const double snap = 1e-10 * h_;
  struct BKey {
    std::int64_t a, b;
    bool operator==(const BKey& o) const { return a == o.a && b == o.b; }
  };
  struct BKeyHash {
    size_t operator()(const BKey& k) const {
      return std::hash<std::int64_t>()(k.a * 1000003 ^ k.b);
    }
  };
  std::unordered_map<BKey, int, BKeyHash> bindex;
  const int ndirs = static_cast<int>(V_.directions.size());
  ray_endpoint_.assign(static_cast<size_t>(n_interior_) * ndirs, -1);

  auto lookup_boundary = [&](const Vec2& p) -> int {
    std::int64_t a0 = std::llround(p.x() / snap);
    std::int64_t b0 = std::llround(p.y() / snap);
    for (std::int64_t da = -1; da <= 1; ++da)
      for (std::int64_t db = -1; db <= 1; ++db) {
        auto it = bindex.find(BKey{a0 + da, b0 + db});
        if (it != bindex.end() &&
            (nodes_[it->second] - p).cwiseAbs().maxCoeff() <= snap)
          return it->second;
      }
    return -1;
  };

  for (int id = 0; id < n_interior_; ++id) {
    const Vec2 x = nodes_[id];  // copy: nodes_ may reallocate below
    for (int di = 0; di < ndirs; ++di) {
      const IVec2& e = V_.directions[di];
      Vec2 ed(e.x(), e.y());
      double t = spec_.ray_exit(x, ed);
      double he = std::min(h_, t);
      if (he >= h_) {
        // Full step: endpoint is a lattice point, interior or on the boundary.
        IVec2 k2 = coords_[id] + e;
        auto it = interior_index_.find(pack(k2));
        if (it != interior_index_.end()) {
          ray_endpoint_[static_cast<size_t>(id) * ndirs + di] = it->second;
          continue;
        }
        he = h_;
      }
      Vec2 p = x + he * ed;
      int bid = lookup_boundary(p);
      if (bid < 0) {
        bid = static_cast<int>(nodes_.size());
        nodes_.push_back(p);
        bindex[BKey{std::llround(p.x() / snap), std::llround(p.y() / snap)}] =
            bid;
      }
      ray_endpoint_[static_cast<size_t>(id) * ndirs + di] = bid;
    }
  }

  // Deterministic boundary ordering: sort boundary nodes lexicographically
  // and remap ids.
  std::vector<int> order(nodes_.size() - n_interior_);
  std::iota(order.begin(), order.end(), n_interior_);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (nodes_[a].x() != nodes_[b].x()) return nodes_[a].x() < nodes_[b].x();
    return nodes_[a].y() < nodes_[b].y();
  });
  std::vector<int> remap(nodes_.size());
  std::iota(remap.begin(), remap.begin() + n_interior_, 0);
  std::vector<Vec2> bsorted;
  bsorted.reserve(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = n_interior_ + static_cast<int>(i);
    bsorted.push_back(nodes_[order[i]]);
  }
  std::copy(bsorted.begin(), bsorted.end(), nodes_.begin() + n_interior_);
  for (int& r : ray_endpoint_) r = remap[r];
}

int LatticeDomain::interior_at(const IVec2& k) const {
  auto it = interior_index_.find(pack(k));
  return it == interior_index_.end() ? -1 : it->second;
}

IVec2 LatticeDomain::lattice_coords(int interior_id) const {
  return coords_[interior_id];
}

double LatticeDomain::boundary_step(int interior_id, const IVec2& e) const {
  Vec2 ed(e.x(), e.y());
  return std::min(h_, spec_.ray_exit(nodes_[interior_id], ed));
}

int LatticeDomain::ray_endpoint(int interior_id, int dir_index) const {
  return ray_endpoint_[static_cast<size_t>(interior_id) *
                           V_.directions.size() +
                       dir_index];
}

void LatticeDomain::dump(std::ostream& os) const {
  os.precision(17);
  for (int id = 0; id < num_nodes(); ++id) {
    os << (is_interior(id) ? 'I' : 'B') << ' ' << nodes_[id].x();
    if (dim() == 2) os << ' ' << nodes_[id].y();
    os << '\n';
  }
}

}  // namespace dma
