#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "dma/domain.hpp"
#include "dma/types.hpp"

namespace dma {

// Symmetric set of primitive integer directions with ||e||_inf <= radius.
// Always contains the canonical basis vectors.
struct DirectionSet {
  int radius = 1;
  std::vector<IVec2> directions;

  static DirectionSet make(int dim, int radius);

  // Index of e in directions, or -1.
  int find(const IVec2& e) const;
  bool contains(const IVec2& e) const { return find(e) >= 0; }
  // Index of the first direction of each +/- pair (for loops over
  // representatives).
  std::vector<int> representatives() const;
};

// Lattice discretization of a convex domain: the interior nodes of h*Z^d and
// the boundary nodes hit by stencil rays.  Immutable after construction.
class LatticeDomain {
 public:
  LatticeDomain(ConvexDomainSpec spec, double h, DirectionSet V);

  const ConvexDomainSpec& spec() const { return spec_; }
  double h() const { return h_; }
  const DirectionSet& stencil() const { return V_; }
  int dim() const { return spec_.dim; }

  int num_interior() const { return n_interior_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_boundary() const { return num_nodes() - n_interior_; }
  bool is_interior(int id) const { return id < n_interior_; }
  const Vec2& node(int id) const { return nodes_[id]; }
  const std::vector<Vec2>& nodes() const { return nodes_; }

  // Id of the interior node at integer lattice coordinates, or -1.
  int interior_at(const IVec2& k) const;
  // Integer lattice coordinates of an interior node.
  IVec2 lattice_coords(int interior_id) const;

  // h^e_x for an interior node: the largest step length in (0, h] keeping
  // x + step * e inside the closure of the domain.
  double boundary_step(int interior_id, const IVec2& e) const;

  // Node (interior or boundary) hit by the ray x + boundary_step * e; this
  // exists for every interior node and stencil direction by construction.
  int ray_endpoint(int interior_id, int dir_index) const;

  // Text dump: `I x [y]` / `B x [y]`, 17 significant digits.
  void dump(std::ostream& os) const;

 private:
  ConvexDomainSpec spec_;
  double h_;
  DirectionSet V_;
  int n_interior_ = 0;
  std::vector<Vec2> nodes_;
  std::unordered_map<std::int64_t, int> interior_index_;
  // (interior id, direction index) -> endpoint node id
  std::vector<int> ray_endpoint_;
  std::vector<IVec2> coords_;
};

}  // namespace dma
