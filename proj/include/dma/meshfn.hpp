#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "dma/lattice.hpp"
#include "dma/types.hpp"

namespace dma {

class MeshFunction {
 public:
  MeshFunction(std::shared_ptr<const LatticeDomain> dom,
               Eigen::VectorXd values);

  const LatticeDomain& dom() const { return *dom_; }
  std::shared_ptr<const LatticeDomain> dom_ptr() const { return dom_; }
  const Eigen::VectorXd& values() const { return values_; }
  double operator()(int id) const { return values_[id]; }
  double value_scale() const { return values_.cwiseAbs().maxCoeff(); }

  // Largest chord slope over node pairs, subsampled deterministically to at
  // most 10^6 pairs.  Cached after the first call.
  double lipschitz_ratio_max() const;

  // `mafn v1 ...` text format.
  void write(std::ostream& os) const;
  static MeshFunction read(std::istream& is,
                           std::shared_ptr<const LatticeDomain> dom);

 private:
  std::shared_ptr<const LatticeDomain> dom_;
  Eigen::VectorXd values_;
  mutable double lip_cache_ = -1.0;
};

// Pointwise sampling of f on all nodes.
MeshFunction sample(const std::function<double(const Vec2&)>& f,
                    std::shared_ptr<const LatticeDomain> dom);
// Boundary values from g, interior filled with a constant.
MeshFunction sample_boundary(const std::function<double(const Vec2&)>& g,
                             double interior_fill,
                             std::shared_ptr<const LatticeDomain> dom);

// Directional second difference with boundary-fitted steps.
double delta_e(const MeshFunction& u, int interior_id, const IVec2& e);

struct ConvexityViolation {
  int node;
  IVec2 direction;
  double delta;
};

struct ConvexityReport {
  bool is_discrete_convex = true;
  std::vector<ConvexityViolation> violations;
  double min_delta = std::numeric_limits<double>::infinity();
};

// Checks delta_e >= 0 over one representative of each +/- direction pair.
ConvexityReport is_discrete_convex(const MeshFunction& u);

// True iff the piecewise linear interpolant of u along the lattice line
// through x0 with direction e has nondecreasing chord slopes.
bool line_interpolant_is_convex(const MeshFunction& u, int interior_id,
                                const IVec2& e);

}  // namespace dma
