#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "dma/envelope.hpp"
#include "dma/meshfn.hpp"
#include "dma/subdiff.hpp"
#include "dma/types.hpp"

namespace dma {

// Density R on slope space.
struct DensitySpec {
  enum class Kind { Unit, Callable, RationalQuadratic };
  Kind kind = Kind::Unit;
  std::function<double(const Vec2&)> fn;
  double c = 0;  // RationalQuadratic: R(p) = 1/(1 + c ||p||^2)

  static DensitySpec unit() { return {}; }
  static DensitySpec callable(std::function<double(const Vec2&)> f);
  static DensitySpec rational_quadratic(double c);

  double operator()(const Vec2& p) const;
};

// Atomic measure: one nonnegative weight per interior node.
struct AtomicMeasure {
  std::shared_ptr<const LatticeDomain> dom;
  std::vector<double> weights;  // indexed by interior id
  DensitySpec density;

  // `node_id,x,[y,]weight`
  void dump_csv(std::ostream& os) const;
};

// omega(R, u_h, {x}): integral of R over the normal cell at a contact node,
// 0 elsewhere.  R == 1 uses the exact cell volume; otherwise a degree-5
// triangle rule with 3 uniform refinements, checked to 1e-6 relative.
double ma_weight(const MeshFunction& u, const LowerHull& hull, int interior_id,
                 const DensitySpec& R);

AtomicMeasure compute_weights(const MeshFunction& u, const LowerHull& hull,
                              const DensitySpec& R);

// Sum of weights over interior nodes in the closure of E.
double measure_of_region(const AtomicMeasure& m, const QueryRegion& E);

// omega(1, u_h, Omega_h) = sum over contact nodes of the cell volume.
double total_mass(const MeshFunction& u, const LowerHull& hull);

struct AbpReport {
  double max_ratio = 0;
  double mass = 0;
};

// Empirical ABP ratio (-u)^d / (diam^{d-1} d(x, bdry) mass) maximized over
// interior nodes with u < 0.  Requires u >= 0 on the boundary nodes.
AbpReport abp_check(const MeshFunction& u, const LowerHull& hull);

// Oberman's wide-stencil MA operator: inf over orthogonal integer bases with
// ||e_i||_inf <= r_W of prod_i max{Delta_{e_i} u, 0} / ||e_i||^2.
double oberman_operator(const MeshFunction& u, int interior_id, int r_W);

}  // namespace dma
