#pragma once

#include <vector>

#include "dma/envelope.hpp"
#include "dma/meshfn.hpp"
#include "dma/types.hpp"

namespace dma {

// Bounded convex polytope in slope space.  d=1: interval stored as one or two
// vertices with y=0; d=2: strictly convex CCW vertex list.  An empty vertex
// list is the empty cell.
struct SlopeCell {
  int dim = 2;
  std::vector<Vec2> verts;

  bool empty() const { return verts.empty(); }
  bool is_point() const { return verts.size() == 1; }
  double lo() const { return verts.front().x(); }  // d=1
  double hi() const { return verts.back().x(); }   // d=1
};

// p . (y - x) <= u(y) - u(x) over all nodes y: the discrete normal mapping at
// an interior node.  May be empty (non-contact nodes).
SlopeCell discrete_subdifferential(const MeshFunction& u, int interior_id);

// conv of the slopes of the hull faces whose projection contains x: the
// subdifferential of the envelope.  x need not be a node.
SlopeCell hull_normal_cell(const LowerHull& hull, const Vec2& x);

// Interval length / polygon area; 0 for empty, point, and segment cells.
double cell_volume(const SlopeCell& c);

struct CellPair {
  int node = -1;
  SlopeCell direct_cell;
  SlopeCell hull_cell;
  bool equal = false;
  double hausdorff = 0;
};

struct EquivalenceViolation : std::runtime_error {
  CellPair pair;
  EquivalenceViolation(const std::string& msg, CellPair p)
      : std::runtime_error(msg), pair(std::move(p)) {}
};

// Contact nodes: both cells must agree to Hausdorff 1e-8 x slope scale.
// Non-contact nodes: the direct cell must be empty.  Throws
// EquivalenceViolation otherwise.
CellPair equivalence_check(const MeshFunction& u, const LowerHull& hull,
                           int interior_id);

// `C nodeid k p1 q1 ... pk qk`
void dump_cell(std::ostream& os, int node, const SlopeCell& c);

}  // namespace dma
