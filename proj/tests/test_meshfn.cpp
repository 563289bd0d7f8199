#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dma/meshfn.hpp"

using namespace dma;

namespace {

std::shared_ptr<const LatticeDomain> box2(double h, int radius = 1) {
  return std::make_shared<LatticeDomain>(
      ConvexDomainSpec::box(Vec2(-1, -1), Vec2(1, 1)), h,
      DirectionSet::make(2, radius));
}

std::shared_ptr<const LatticeDomain> seg(double h, double a = -1,
                                         double b = 1) {
  return std::make_shared<LatticeDomain>(ConvexDomainSpec::segment(a, b), h,
                                         DirectionSet::make(1, 1));
}

double quad(const Vec2& x) { return 0.5 * x.squaredNorm(); }

}  // namespace

TEST_CASE("sample evaluates exactly") {
  auto dom = box2(1.0);
  MeshFunction u = sample(quad, dom);
  CHECK(u(dom->interior_at(IVec2(0, 0))) == 0.0);
  for (int id = 0; id < dom->num_nodes(); ++id)
    CHECK(u(id) == 0.5 * dom->node(id).squaredNorm());
  CHECK_THROWS_AS(
      sample([](const Vec2&) { return std::nan(""); }, dom), NonFiniteValue);
}

TEST_CASE("delta_e of quadratics is the squared direction norm") {
  auto dom = box2(0.25, 2);
  MeshFunction u = sample(quad, dom);
  int id = dom->interior_at(IVec2(0, 0));
  CHECK(delta_e(u, id, IVec2(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(delta_e(u, id, IVec2(1, 1)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(delta_e(u, id, IVec2(1, 2)) == doctest::Approx(5.0).epsilon(1e-12));
  MeshFunction aff = sample(
      [](const Vec2& x) { return 3 * x.x() - 2 * x.y() + 1; }, dom);
  CHECK(delta_e(aff, id, IVec2(1, 0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(delta_e(u, id, IVec2(1, 3)), MissingNode);
}

TEST_CASE("delta_e with boundary-fitted steps stays exact for quadratics") {
  auto dom = std::make_shared<LatticeDomain>(
      ConvexDomainSpec::ball(Vec2(0, 0), 1.0), 0.375,
      DirectionSet::make(2, 1));
  MeshFunction u = sample(quad, dom);
  for (int id = 0; id < dom->num_interior(); ++id)
    CHECK(delta_e(u, id, IVec2(1, 0)) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("is_discrete_convex reports violations") {
  auto dom = box2(0.5);
  CHECK(is_discrete_convex(sample(quad, dom)).is_discrete_convex);
  auto rep = is_discrete_convex(
      sample([](const Vec2& x) { return -quad(x); }, dom));
  CHECK(!rep.is_discrete_convex);
  CHECK(!rep.violations.empty());

  auto d1 = seg(0.25, 0, 1);
  Eigen::VectorXd vals(d1->num_nodes());
  for (int id = 0; id < d1->num_nodes(); ++id) {
    double x = d1->node(id).x();
    vals[id] = (std::abs(x - 0.5) < 1e-12) ? 0.1 : 0.0;
  }
  auto rep1 = is_discrete_convex(MeshFunction(d1, vals));
  CHECK(!rep1.is_discrete_convex);
  REQUIRE(rep1.violations.size() == 1);
  CHECK(d1->node(rep1.violations[0].node).x() == doctest::Approx(0.5));
  CHECK(rep1.min_delta < 0);
}

TEST_CASE("line interpolant convexity") {
  auto d1 = seg(1.0);
  int id = d1->interior_at(IVec2(0, 0));
  Eigen::VectorXd hat(d1->num_nodes());
  for (int i = 0; i < d1->num_nodes(); ++i)
    hat[i] = std::abs(d1->node(i).x());
  CHECK(line_interpolant_is_convex(MeshFunction(d1, hat), id, IVec2(1, 0)));
  Eigen::VectorXd bump = -hat;
  CHECK(
      !line_interpolant_is_convex(MeshFunction(d1, bump), id, IVec2(1, 0)));

  auto dom = box2(0.25);
  MeshFunction u = sample(quad, dom);
  for (int nid = 0; nid < dom->num_interior(); nid += 7)
    for (int di : dom->stencil().representatives())
      CHECK(line_interpolant_is_convex(u, nid,
                                       dom->stencil().directions[di]));
}

TEST_CASE("lipschitz_ratio_max of 1-D quadratic") {
  auto d1 = seg(0.25);
  MeshFunction u = sample(quad, d1);
  CHECK(u.lipschitz_ratio_max() == doctest::Approx(0.875).epsilon(1e-12));
  MeshFunction c = sample([](const Vec2&) { return 3.0; }, d1);
  CHECK(c.lipschitz_ratio_max() == 0.0);
}

TEST_CASE("mafn round trip") {
  auto dom = box2(0.5);
  MeshFunction u = sample(quad, dom);
  std::ostringstream os;
  u.write(os);
  CHECK(os.str().rfind("mafn v1 d=2 h=0.5", 0) == 0);
  std::istringstream is(os.str());
  MeshFunction v = MeshFunction::read(is, dom);
  for (int id = 0; id < dom->num_nodes(); ++id) CHECK(v(id) == u(id));

  std::istringstream bad("not a header\n");
  CHECK_THROWS_AS(MeshFunction::read(bad, dom), FormatError);
}

TEST_CASE("delta_e is affine invariant and linear") {
  auto dom = box2(0.25, 2);
  MeshFunction u = sample(quad, dom);
  MeshFunction v = sample(
      [](const Vec2& x) { return std::exp(0.3 * x.x() - 0.2 * x.y()); }, dom);
  MeshFunction uL = sample(
      [](const Vec2& x) { return quad(x) + 4 * x.x() - 7 * x.y() + 2; }, dom);
  Eigen::VectorXd comb = 2.0 * u.values() - 0.5 * v.values();
  MeshFunction w(dom, comb);
  for (int id = 0; id < dom->num_interior(); id += 5)
    for (int di : dom->stencil().representatives()) {
      const IVec2& e = dom->stencil().directions[di];
      CHECK(delta_e(uL, id, e) ==
            doctest::Approx(delta_e(u, id, e)).epsilon(1e-10));
      CHECK(delta_e(w, id, e) ==
            doctest::Approx(2 * delta_e(u, id, e) - 0.5 * delta_e(v, id, e))
                .epsilon(1e-10));
    }
}
