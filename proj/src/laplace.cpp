#include "dma/laplace.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

namespace dma {

namespace {

std::vector<IVec2> canonical_dirs(int dim) {
  std::vector<IVec2> out = {IVec2(1, 0)};
  if (dim == 2) out.push_back(IVec2(0, 1));
  return out;
}

}  // namespace

double discrete_laplacian(const MeshFunction& u, int interior_id) {
  double s = 0;
  for (const IVec2& e : canonical_dirs(u.dom().dim()))
    s += delta_e(u, interior_id, e);
  return s;
}

MeshFunction solve_dirichlet(std::shared_ptr<const LatticeDomain> dom,
                             const std::function<double(const Vec2&)>& g) {
  const int n = dom->num_interior();
  Eigen::VectorXd vals(dom->num_nodes());
  double gscale = 0;
  for (int id = n; id < dom->num_nodes(); ++id) {
    vals[id] = g(dom->node(id));
    if (!std::isfinite(vals[id]))
      throw NonFiniteValue("solve_dirichlet: g not finite at a boundary node");
    gscale = std::max(gscale, std::abs(vals[id]));
  }

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int id = 0; id < n; ++id) {
    double diag = 0;
    for (const IVec2& e : canonical_dirs(dom->dim()))
      for (int sgn : {1, -1}) {
        IVec2 dir = sgn * e;
        int di = dom->stencil().find(dir);
        double hstep = dom->boundary_step(id, dir);
        double hopp = dom->boundary_step(id, -dir);
        double coef = 2.0 / (hstep + hopp) / hstep;
        int nb = dom->ray_endpoint(id, di);
        diag -= coef;
        if (dom->is_interior(nb))
          trip.emplace_back(id, nb, coef);
        else
          rhs[id] -= coef * vals[nb];
      }
    trip.emplace_back(id, id, diag);
  }

  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
  if (lu.info() != Eigen::Success)
    throw SingularSystem("solve_dirichlet: factorization failed");
  Eigen::VectorXd w = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !w.allFinite())
    throw SingularSystem("solve_dirichlet: solve failed");
  vals.head(n) = w;
  return MeshFunction(std::move(dom), std::move(vals));
}

bool check_max_principle(const MeshFunction& w) {
  const LatticeDomain& dom = w.dom();
  if (dom.num_boundary() == 0) return true;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int id = dom.num_interior(); id < dom.num_nodes(); ++id) {
    lo = std::min(lo, w(id));
    hi = std::max(hi, w(id));
  }
  const double tol = 1e-10 * std::max(1.0, w.value_scale());
  for (int id = 0; id < dom.num_interior(); ++id)
    if (w(id) < lo - tol || w(id) > hi + tol) return false;
  return true;
}

bool check_comparison(const MeshFunction& w1, const MeshFunction& w2) {
  const LatticeDomain& dom = w1.dom();
  if (&dom != &w2.dom())
    throw HypothesisViolated("check_comparison: different domains");
  const double scale = std::max({1.0, w1.value_scale(), w2.value_scale()});
  for (int id = 0; id < dom.num_interior(); ++id) {
    if (discrete_laplacian(w1, id) < -1e-10 * scale)
      throw HypothesisViolated(
          "check_comparison: Delta_h w1 < 0 at node " + std::to_string(id));
    if (discrete_laplacian(w2, id) > 1e-10 * scale)
      throw HypothesisViolated(
          "check_comparison: Delta_h w2 > 0 at node " + std::to_string(id));
  }
  for (int id = dom.num_interior(); id < dom.num_nodes(); ++id)
    if (w1(id) > w2(id) + 1e-12 * scale)
      throw HypothesisViolated(
          "check_comparison: boundary data not ordered at node " +
          std::to_string(id));
  for (int id = 0; id < dom.num_nodes(); ++id)
    if (w1(id) > w2(id) + 1e-9 * scale) return false;
  return true;
}

BarrierConstants barrier_constants(double mu, int d, double eta) {
  if (!(mu > 0 && mu < 1))
    throw DomainError("barrier_constants: mu must be in (0,1)");
  if (d < 3) throw DomainError("barrier_constants: d must be >= 3");
  if (!(eta > 0)) throw DomainError("barrier_constants: eta must be > 0");
  BarrierConstants k;
  k.mu = mu;
  k.d = d;
  k.eta = eta;
  k.xi = d - 2;
  const double c = std::pow(mu / (2.0 - mu), k.xi);
  const double s = std::pow(mu / 2.0, k.xi);
  const double q = std::pow(mu / 4.0, k.xi);
  k.theta = (1.0 - 0.5 * c - s) / (1.0 - s);
  k.a = (1.0 - s) / (1.0 - q);
  k.b = 1.0 - k.a;
  k.a_prime = (1.0 - c) / (1.0 - s);
  k.b_prime = (c - s) / (1.0 - s);
  k.gamma = 0.25 * (c - s) / (1.0 - q) * eta / 4.0;
  if (!(k.theta > 0 && k.theta < 1) || !(k.a > 0 && k.a < 1) ||
      !(k.a_prime > 0 && k.a_prime < 1) || !(k.gamma > 0) ||
      std::abs(k.b_prime - k.b + k.a_prime - k.a) > 1e-12)
    throw DomainError("barrier_constants: invariant violated");
  return k;
}

std::function<double(const Vec2&)> laplace_builtin(const std::string& name) {
  if (name == "affine") return [](const Vec2& x) { return 2 * x.x() - x.y() + 1; };
  if (name == "const") return [](const Vec2&) { return 1.0; };
  if (name == "x1x2") return [](const Vec2& x) { return x.x() * x.y(); };
  if (name == "x1sq-x2sq")
    return [](const Vec2& x) { return x.x() * x.x() - x.y() * x.y(); };
  if (name == "cubic-harmonic")
    return [](const Vec2& x) {
      return x.x() * x.x() * x.x() - 3.0 * x.x() * x.y() * x.y();
    };
  throw DomainError("laplace_builtin: unknown function " + name);
}

}  // namespace dma
