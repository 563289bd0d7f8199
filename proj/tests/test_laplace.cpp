#include <doctest.h>

#include <cmath>
#include <random>

#include "dma/envelope.hpp"
#include "dma/experiments.hpp"
#include "dma/laplace.hpp"

using namespace dma;

namespace {

std::shared_ptr<const LatticeDomain> box2(double h) {
  return std::make_shared<LatticeDomain>(
      ConvexDomainSpec::box(Vec2(-1, -1), Vec2(1, 1)), h,
      DirectionSet::make(2, 1));
}

std::shared_ptr<const LatticeDomain> ball2(double h) {
  return std::make_shared<LatticeDomain>(
      ConvexDomainSpec::ball(Vec2(0, 0), 1.0), h, DirectionSet::make(2, 1));
}

}  // namespace

TEST_CASE("solve reproduces discrete-harmonic data exactly") {
  for (auto mk : {+[](double h) { return box2(h); },
                  +[](double h) { return ball2(h); }}) {
    auto dom = mk(0.25);
    for (const char* name : {"affine", "const", "x1x2"}) {
      auto g = laplace_builtin(name);
      MeshFunction w = solve_dirichlet(dom, g);
      for (int id = 0; id < dom->num_nodes(); ++id)
        CHECK(w(id) == doctest::Approx(g(dom->node(id))).epsilon(1e-9));
    }
  }
}

TEST_CASE("x1sq-x2sq is discrete-harmonic on the box") {
  // The scheme is exact on quadratics, so x1^2 - x2^2 solves exactly even
  // with boundary-fitted unequal steps on the disk.
  auto g = laplace_builtin("x1sq-x2sq");
  for (auto dom : {box2(0.25), ball2(0.25)}) {
    MeshFunction w = sample(g, dom);
    for (int id = 0; id < dom->num_interior(); ++id)
      CHECK(discrete_laplacian(w, id) == doctest::Approx(0).epsilon(1e-10));
    MeshFunction ws = solve_dirichlet(dom, g);
    for (int id = 0; id < dom->num_nodes(); ++id)
      CHECK(ws(id) == doctest::Approx(w(id)).epsilon(1e-9));
  }
}

TEST_CASE("solver residual is small") {
  auto dom = ball2(0.125);
  MeshFunction w = solve_dirichlet(dom, laplace_builtin("cubic-harmonic"));
  const double scale = std::max(1.0, w.value_scale());
  for (int id = 0; id < dom->num_interior(); ++id)
    CHECK(std::abs(discrete_laplacian(w, id)) <= 1e-8 * scale / (0.125 * 0.125));
}

TEST_CASE("max principle holds for solves and fails when corrupted") {
  auto dom = ball2(0.25);
  MeshFunction w = solve_dirichlet(dom, laplace_builtin("cubic-harmonic"));
  CHECK(check_max_principle(w));
  Eigen::VectorXd vals = w.values();
  double hi = vals.tail(dom->num_boundary()).maxCoeff();
  vals[0] = hi + 1.0;
  CHECK(!check_max_principle(MeshFunction(dom, vals)));
}

TEST_CASE("comparison principle") {
  auto dom = box2(0.25);
  // w1 subharmonic (convex), w2 harmonic, w1 <= w2 on the boundary.
  MeshFunction w1 = sample(
      [](const Vec2& x) { return 0.5 * x.squaredNorm() - 1.0; }, dom);
  MeshFunction w2 = solve_dirichlet(dom, [](const Vec2& x) {
    return 0.5 * x.squaredNorm() - 1.0;
  });
  CHECK(check_comparison(w1, w2));
  CHECK(check_comparison(w2, w2));  // equality is allowed

  // shifted constants: w1 = 0 <= w2 = 1
  MeshFunction z(dom, Eigen::VectorXd::Zero(dom->num_nodes()));
  MeshFunction o(dom, Eigen::VectorXd::Ones(dom->num_nodes()));
  CHECK(check_comparison(z, o));
  CHECK_THROWS_AS(check_comparison(o, z), HypothesisViolated);  // boundary order

  // w2 strictly subharmonic violates the hypothesis on w2
  MeshFunction conv = sample(
      [](const Vec2& x) { return x.squaredNorm() - 3.0; }, dom);
  CHECK_THROWS_AS(check_comparison(z, conv), HypothesisViolated);
}

TEST_CASE("barrier constants at mu=1/2, d=3, eta=1") {
  BarrierConstants k = barrier_constants(0.5, 3, 1.0);
  CHECK(k.xi == 1);
  CHECK(k.theta == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
  CHECK(k.a == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
  CHECK(k.b == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(k.a_prime == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(k.b_prime == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(k.gamma > 0);
  CHECK(std::abs(k.b_prime - k.b + k.a_prime - k.a) <= 1e-12);
}

TEST_CASE("barrier identity and ranges across random parameters") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  std::uniform_int_distribution<int> D(3, 8);
  for (int t = 0; t < 100; ++t) {
    double mu = U(rng);
    int d = D(rng);
    double eta = 0.1 + U(rng);
    BarrierConstants k = barrier_constants(mu, d, eta);
    CHECK(std::abs(k.b_prime - k.b + k.a_prime - k.a) <= 1e-12);
    CHECK(k.theta > 0);
    CHECK(k.theta < 1);
    CHECK(k.a + k.b == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.a_prime + k.b_prime == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.gamma > 0);
  }
}

TEST_CASE("barrier parameter validation") {
  CHECK_THROWS_AS(barrier_constants(0.0, 3, 1.0), DomainError);
  CHECK_THROWS_AS(barrier_constants(1.0, 3, 1.0), DomainError);
  CHECK_THROWS_AS(barrier_constants(0.5, 2, 1.0), DomainError);
  CHECK_THROWS_AS(barrier_constants(0.5, 3, 0.0), DomainError);
}

TEST_CASE("solve is linear in the boundary data") {
  auto dom = ball2(0.25);
  auto g1 = laplace_builtin("x1x2");
  auto g2 = laplace_builtin("cubic-harmonic");
  MeshFunction w1 = solve_dirichlet(dom, g1);
  MeshFunction w2 = solve_dirichlet(dom, g2);
  MeshFunction w = solve_dirichlet(
      dom, [&](const Vec2& x) { return 2 * g1(x) - 0.5 * g2(x); });
  for (int id = 0; id < dom->num_nodes(); ++id)
    CHECK(w(id) == doctest::Approx(2 * w1(id) - 0.5 * w2(id)).epsilon(1e-9));
}

TEST_CASE("discrete-convex data is discrete-subharmonic") {
  auto dom = box2(0.125);
  MeshFunction u = sample_random_convex(random_convex_spec(5, 2), dom);
  for (int id = 0; id < dom->num_interior(); ++id) {
    // perturbed nodes may not be; restrict to convexity via the envelope
    (void)id;
  }
  LowerHull hull = lower_hull(u);
  Eigen::VectorXd gv(dom->num_nodes());
  for (int id = 0; id < dom->num_nodes(); ++id)
    gv[id] = gamma_eval(hull, dom->node(id));
  MeshFunction g(dom, gv);
  const double tol = 1e-10 * std::max(1.0, g.value_scale());
  for (int id = 0; id < dom->num_interior(); ++id)
    CHECK(discrete_laplacian(g, id) >= -tol / (0.125 * 0.125));
}

TEST_CASE("unknown builtin name is rejected") {
  CHECK_THROWS_AS(laplace_builtin("nope"), DomainError);
}
