#pragma once

#include <functional>
#include <memory>
#include <string>

#include "dma/meshfn.hpp"
#include "dma/types.hpp"

namespace dma {

// Delta_h u(x) = sum over canonical directions of the boundary-fitted second
// difference at an interior node.
double discrete_laplacian(const MeshFunction& u, int interior_id);

// Solves Delta_h w = 0 on the interior nodes with w = g on the boundary
// nodes, by sparse LU on the M-matrix system.
MeshFunction solve_dirichlet(std::shared_ptr<const LatticeDomain> dom,
                             const std::function<double(const Vec2&)>& g);

// min boundary value - tol <= w <= max boundary value + tol at every interior
// node (tol = 1e-10 x scale).
bool check_max_principle(const MeshFunction& w);

// Discrete comparison principle: requires Delta_h w1 >= -tol, Delta_h w2 <=
// tol at interior nodes and w1 <= w2 + 1e-12 on the boundary; throws
// HypothesisViolated otherwise.  Returns w1 <= w2 + 1e-9 on all nodes.
bool check_comparison(const MeshFunction& w1, const MeshFunction& w2);

struct BarrierConstants {
  double mu, eta;
  int d, xi;
  double theta, a, b, a_prime, b_prime, gamma;
};

// Ring-barrier constants; valid for mu in (0,1) and d >= 3.
BarrierConstants barrier_constants(double mu, int d, double eta);

// Named boundary-data functions for the CLI: affine, const, x1x2, x1sq-x2sq,
// cubic-harmonic.
std::function<double(const Vec2&)> laplace_builtin(const std::string& name);

}  // namespace dma
