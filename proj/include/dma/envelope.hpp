#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "dma/meshfn.hpp"
#include "dma/types.hpp"

namespace dma {

// One affine piece of the convex envelope.  For d=1 faces are segments
// (verts[2] < 0); for d=2 they are CCW triangles.
struct HullFace {
  Vec2 slope = Vec2::Zero();
  double offset = 0;
  std::array<int, 3> verts{-1, -1, -1};
  std::array<Vec2, 3> corner;  // vertex coordinates, cached
};

// Piecewise-affine convex envelope of a finite point/value set: the lower
// faces of the lifted convex hull.  Immutable after construction.
class LowerHull {
 public:
  int dim() const { return dim_; }
  const std::vector<HullFace>& faces() const { return faces_; }
  const std::vector<int>& vertex_nodes() const { return vertex_nodes_; }
  bool is_vertex(int node) const { return is_vertex_[node]; }

  // Value of the envelope at x in conv of the input points.  Throws
  // OutsideHull otherwise.
  double eval(const Vec2& x) const;
  // max_F (p_F . x + b_F): the canonical convex extension, finite on R^d.
  double extension_eval(const Vec2& x) const;
  // Indices of faces whose closed projection contains x (tolerance in
  // domain units).
  std::vector<int> faces_at(const Vec2& x) const;

  double coord_scale() const { return coord_scale_; }

  // `F p1 [p2] b v1 v2 [v3]` per face.
  void dump(std::ostream& os) const;

 private:
  friend LowerHull lower_hull_points(const std::vector<Vec2>&,
                                     const Eigen::VectorXd&, int);
  int dim_ = 2;
  std::vector<HullFace> faces_;
  std::vector<int> vertex_nodes_;
  std::vector<char> is_vertex_;
  double coord_scale_ = 1;
  double tol_ = 0;
  // uniform grid over face bounding boxes for point location (d=2)
  Vec2 grid_lo_ = Vec2::Zero();
  double grid_cell_ = 1;
  int grid_nx_ = 0, grid_ny_ = 0;
  std::vector<std::vector<int>> grid_bins_;
  std::vector<double> breaks_;  // d=1: sorted vertex abscissae
};

// Lower convex hull of arbitrary lifted points (dim 1 or 2).
LowerHull lower_hull_points(const std::vector<Vec2>& pts,
                            const Eigen::VectorXd& vals, int dim);

inline LowerHull lower_hull(const MeshFunction& u) {
  return lower_hull_points(u.dom().nodes(), u.values(), u.dom().dim());
}

inline double gamma_eval(const LowerHull& hull, const Vec2& x) {
  return hull.eval(x);
}
inline double gamma_extension_eval(const LowerHull& hull, const Vec2& x) {
  return hull.extension_eval(x);
}

struct ContactSet {
  std::vector<int> nodes;          // interior contact node ids, sorted
  std::vector<char> mask;          // per node id (all nodes)
  bool contains(int id) const { return mask[id]; }
};

// Interior nodes where the envelope touches the mesh function.
ContactSet contact_set(const MeshFunction& u, const LowerHull& hull);

// Convex envelope with boundary data: value at x of the largest convex
// function below g on the sampled boundary.  Throws UnboundedEnvelope when
// x lies outside the convex hull of the samples.
double boundary_envelope_eval(const std::vector<Vec2>& boundary_samples,
                              const Eigen::VectorXd& g_values, const Vec2& x,
                              int dim);

}  // namespace dma
