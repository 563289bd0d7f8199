#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dma/domain.hpp"
#include "dma/measure.hpp"
#include "dma/meshfn.hpp"
#include "dma/types.hpp"

namespace dma {

// Builtin analytic test function with gradient and Hessian determinant when
// they exist (null otherwise).
struct TestFunction {
  std::string name;
  bool convex = true;
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
  std::function<double(const Vec2&)> hessian_det;
};

// quadratic, anisotropic-quadratic, abs1norm, cone, affine.
TestFunction builtin_function(const std::string& name, int dim);

// Random strictly convex quadratic q(x) = x'Ax/2 + b.x with eigenvalues of A
// in [1/2, 2]; deterministic in the seed.
struct RandomConvexSpec {
  Eigen::Matrix2d A;
  Vec2 b;
  std::uint64_t seed = 0;
  int dim = 2;
};
RandomConvexSpec random_convex_spec(std::uint64_t seed, int dim);
double rc_value(const RandomConvexSpec& spec, const Vec2& x);

// Samples of the quadratic plus upward perturbations in (0.25, 1.0) x h^2 at
// a random 20% of interior nodes (those nodes leave the contact set).
MeshFunction sample_random_convex(const RandomConvexSpec& spec,
                                  std::shared_ptr<const LatticeDomain> dom);

// int_E R(Du) det D^2 u dx by adaptive Gauss quadrature on a smooth
// parameterization of E (box directly, ball in polar form, polygon by fan
// triangulation); converged to 1e-8 relative.
double reference_measure(const TestFunction& f, const QueryRegion& E,
                         const DensitySpec& R);

struct ExperimentConfig {
  std::string kind;  // weak-convergence, boundary-limit, laplace-convergence,
                     // mass-sweep
  ConvexDomainSpec domain;
  std::string function = "quadratic";
  DensitySpec density;
  std::vector<double> hs;
  std::optional<QueryRegion> region;
  std::optional<QueryRegion> subset;
  double threshold = 0.05;
  std::optional<double> reference;
  int stencil = 2;
  std::string g = "x1sq-x2sq";
  std::string output;  // CSV path; empty = no file
  std::string svg;     // optional SVG path

  // Flat `key = value` file; '#' starts a comment.
  static ExperimentConfig parse_file(const std::string& path);
  static ExperimentConfig parse(std::istream& is);
};

struct ConvergenceRow {
  double h;
  double discrete;
  double reference;
  double error;
  long runtime_ms;
};

struct ExperimentResult {
  std::vector<ConvergenceRow> rows;
  bool pass = false;
  std::string message;
};

ExperimentResult run_weak_convergence(const ExperimentConfig& cfg);
ExperimentResult run_boundary_limit(const ExperimentConfig& cfg);
ExperimentResult run_laplace_convergence(const ExperimentConfig& cfg);
ExperimentResult run_mass_sweep(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_csv(const std::vector<ConvergenceRow>& rows,
               const std::string& path);
void write_svg(const std::vector<ConvergenceRow>& rows,
               const std::string& path);

// --domain box:x0[,y0],x1[,y1] | ball:cx,cy,r | segment:a,b | polygon:<file>
ConvexDomainSpec parse_domain(const std::string& text);

}  // namespace dma
