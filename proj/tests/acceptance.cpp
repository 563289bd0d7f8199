// Acceptance gate: one criterion per invocation (argv[1] in 1..10), one
// PASS/FAIL line on stdout, exit 0 on pass and 1 on fail.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "dma/envelope.hpp"
#include "dma/experiments.hpp"
#include "dma/laplace.hpp"
#include "dma/measure.hpp"
#include "dma/polygon.hpp"
#include "dma/subdiff.hpp"

using namespace dma;

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::shared_ptr<const LatticeDomain> box2(double h, int radius = 2) {
  return std::make_shared<LatticeDomain>(
      ConvexDomainSpec::box(Vec2(-1, -1), Vec2(1, 1)), h,
      DirectionSet::make(2, radius));
}

double halton(std::uint64_t i, unsigned base) {
  double f = 1, r = 0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

struct Result {
  bool pass;
  std::string detail;
};

// --- criterion 1: Figure-1 reproduction ---------------------------------
Result criterion1() {
  auto t0 = Clock::now();
  std::vector<Vec2> pts = {Vec2(-1.5, 0), Vec2(-1, 0), Vec2(1, 0),
                           Vec2(1.5, 0)};
  Eigen::VectorXd vals(4);
  vals << 1, 0, 0, 1;
  LowerHull hull = lower_hull_points(pts, vals, 1);
  bool ok = hull.faces().size() == 3;
  const double want[3] = {-2, 0, 2};
  for (size_t i = 0; ok && i < 3; ++i)
    ok = std::abs(hull.faces()[i].slope.x() - want[i]) <= 1e-12;
  ok = ok && std::abs(gamma_extension_eval(hull, Vec2(2, 0)) - 2) <= 1e-12;
  ok = ok && std::abs(gamma_eval(hull, Vec2(0, 0))) <= 1e-12;
  double ms = ms_since(t0);
  ok = ok && ms < 1.0;
  std::ostringstream d;
  d << hull.faces().size() << " pieces, runtime " << ms << " ms";
  return {ok, d.str()};
}

// --- criterion 2: equivalence suite -------------------------------------
Result criterion2() {
  auto t0 = Clock::now();
  auto dom = box2(0.125);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    MeshFunction u = sample_random_convex(random_convex_spec(seed, 2), dom);
    LowerHull hull = lower_hull(u);
    for (int id = 0; id < dom->num_interior(); ++id) {
      try {
        CellPair p = equivalence_check(u, hull, id);
        if (!p.equal || p.hausdorff > 1e-8) {
          std::ostringstream d;
          d << "seed " << seed << " node " << id << " hausdorff "
            << p.hausdorff;
          return {false, d.str()};
        }
      } catch (const EquivalenceViolation& e) {
        return {false, e.what()};
      }
      ++checked;
    }
  }
  double ms = ms_since(t0);
  std::ostringstream d;
  d << checked << " node checks over 50 instances, runtime " << ms / 1000
    << " s";
  return {ms < 30000, d.str()};
}

// --- criterion 3: mass identity ------------------------------------------
Result criterion3() {
  // d = 2: Monte-Carlo union volume of the contact cells vs total_mass.
  double worst2 = 0;
  auto dom = box2(0.125);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    MeshFunction u = sample_random_convex(random_convex_spec(seed, 2), dom);
    LowerHull hull = lower_hull(u);
    ContactSet cs = contact_set(u, hull);
    std::vector<std::vector<Vec2>> cells;
    Vec2 lo(1e300, 1e300), hi(-1e300, -1e300);
    for (int id : cs.nodes) {
      SlopeCell c = hull_normal_cell(hull, dom->node(id));
      if (c.verts.size() < 3) continue;
      for (const Vec2& v : c.verts) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
      }
      cells.push_back(c.verts);
    }
    const double mass = total_mass(u, hull);
    // grid-bucket the cells for fast point location
    const int G = 48;
    Vec2 ext = hi - lo;
    std::vector<std::vector<int>> bins(G * G);
    for (size_t k = 0; k < cells.size(); ++k) {
      Vec2 clo(1e300, 1e300), chi(-1e300, -1e300);
      for (const Vec2& v : cells[k]) {
        clo = clo.cwiseMin(v);
        chi = chi.cwiseMax(v);
      }
      int i0 = std::clamp(int((clo.x() - lo.x()) / ext.x() * G), 0, G - 1);
      int i1 = std::clamp(int((chi.x() - lo.x()) / ext.x() * G), 0, G - 1);
      int j0 = std::clamp(int((clo.y() - lo.y()) / ext.y() * G), 0, G - 1);
      int j1 = std::clamp(int((chi.y() - lo.y()) / ext.y() * G), 0, G - 1);
      for (int i = i0; i <= i1; ++i)
        for (int j = j0; j <= j1; ++j)
          bins[i * G + j].push_back(static_cast<int>(k));
    }
    const std::uint64_t N = 400000;
    std::uint64_t hits = 0;
    for (std::uint64_t s = 1; s <= N; ++s) {
      Vec2 p(lo.x() + halton(s, 2) * ext.x(),
             lo.y() + halton(s, 3) * ext.y());
      int i = std::clamp(int((p.x() - lo.x()) / ext.x() * G), 0, G - 1);
      int j = std::clamp(int((p.y() - lo.y()) / ext.y() * G), 0, G - 1);
      for (int k : bins[i * G + j])
        if (point_in_convex(cells[k], p, 0)) {
          ++hits;
          break;
        }
    }
    double vol = double(hits) / double(N) * ext.x() * ext.y();
    worst2 = std::max(worst2, std::abs(vol - mass) / mass);
  }

  // d = 1: exact interval-union length on 20 instances.
  double worst1 = 0;
  auto seg = std::make_shared<LatticeDomain>(ConvexDomainSpec::segment(-1, 1),
                                             0.125, DirectionSet::make(1, 1));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MeshFunction u = sample_random_convex(random_convex_spec(seed, 1), seg);
    LowerHull hull = lower_hull(u);
    ContactSet cs = contact_set(u, hull);
    std::vector<std::pair<double, double>> iv;
    for (int id : cs.nodes) {
      SlopeCell c = hull_normal_cell(hull, seg->node(id));
      if (!c.empty()) iv.emplace_back(c.lo(), c.hi());
    }
    std::sort(iv.begin(), iv.end());
    double len = 0, cur_lo = 0, cur_hi = -1e300;
    for (auto& [a, b] : iv) {
      if (a > cur_hi) {
        if (cur_hi > -1e300) len += cur_hi - cur_lo;
        cur_lo = a;
        cur_hi = b;
      } else
        cur_hi = std::max(cur_hi, b);
    }
    if (cur_hi > -1e300) len += cur_hi - cur_lo;
    worst1 = std::max(worst1, std::abs(len - total_mass(u, hull)));
  }
  std::ostringstream d;
  d << "d=2 worst MC rel dev " << worst2 << " (tol 0.01), d=1 worst union gap "
    << worst1 << " (tol 1e-10)";
  return {worst2 <= 0.01 && worst1 <= 1e-10, d.str()};
}

// --- criterion 4: weak convergence for the quadratic ---------------------
Result criterion4() {
  auto t0 = Clock::now();
  auto region = ConvexDomainSpec::box(Vec2(-0.25, -0.25), Vec2(0.25, 0.25));
  std::vector<double> errs;
  double finest = 0;
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    auto dom = box2(h, 1);
    MeshFunction u = sample(
        [](const Vec2& x) { return 0.5 * x.squaredNorm(); }, dom);
    LowerHull hull = lower_hull(u);
    AtomicMeasure m = compute_weights(u, hull, DensitySpec::unit());
    double val = measure_of_region(m, region);
    errs.push_back(std::abs(val - 0.25));
    finest = val;
  }
  bool monotone = true;
  for (size_t i = 0; i + 1 < errs.size(); ++i)
    monotone = monotone && errs[i + 1] < errs[i];
  double rel = errs.back() / 0.25;
  double ms = ms_since(t0);
  std::ostringstream d;
  d << "h=1/64 measure " << finest << " rel error " << rel
    << " (tol 0.05), monotone=" << (monotone ? "yes" : "no") << ", runtime "
    << ms / 1000 << " s";
  return {monotone && rel <= 0.05 && ms < 120000, d.str()};
}

// --- criterion 5: cone atom ----------------------------------------------
Result criterion5() {
  auto t0 = Clock::now();
  auto dom = std::make_shared<LatticeDomain>(
      ConvexDomainSpec::ball(Vec2(0, 0), 1.0), 1.0 / 64,
      DirectionSet::make(2, 1));
  MeshFunction u = sample([](const Vec2& x) { return x.norm(); }, dom);
  LowerHull hull = lower_hull(u);
  AtomicMeasure m = compute_weights(u, hull, DensitySpec::unit());
  double val =
      measure_of_region(m, ConvexDomainSpec::ball(Vec2(0, 0), 0.5));
  double rel = std::abs(val - kPi) / kPi;
  double ms = ms_since(t0);
  std::ostringstream d;
  d << "measure " << val << " vs pi, rel error " << rel
    << " (tol 0.05), runtime " << ms / 1000 << " s";
  return {rel <= 0.05 && ms < 120000, d.str()};
}

// --- criterion 6: 1-D total-mass law -------------------------------------
Result criterion6() {
  double worst = 0;
  for (double h : {0.25, 0.125, 0.0625}) {
    auto dom = std::make_shared<LatticeDomain>(
        ConvexDomainSpec::segment(-1, 1), h, DirectionSet::make(1, 1));
    MeshFunction u = sample(
        [](const Vec2& x) { return 0.5 * x.x() * x.x(); }, dom);
    worst = std::max(worst,
                     std::abs(total_mass(u, lower_hull(u)) - (2.0 - h)));
  }
  std::ostringstream d;
  d << "worst |total_mass - (2-h)| = " << worst << " (tol 1e-10)";
  return {worst <= 1e-10, d.str()};
}

// --- criterion 7: ABP diagnostic -----------------------------------------
Result criterion7() {
  auto seg = std::make_shared<LatticeDomain>(ConvexDomainSpec::segment(-1, 1),
                                             1.0, DirectionSet::make(1, 1));
  Eigen::VectorXd vals(seg->num_nodes());
  for (int id = 0; id < seg->num_nodes(); ++id)
    vals[id] = seg->is_interior(id) ? -1.0 : 0.0;
  MeshFunction pit(seg, vals);
  AbpReport rep1 = abp_check(pit, lower_hull(pit));
  bool ok = std::abs(rep1.max_ratio - 0.5) <= 1e-12;

  double coarsest = 0, worst = 0;
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    auto dom = box2(h, 1);
    MeshFunction u = sample(
        [](const Vec2& x) { return 0.5 * x.squaredNorm() - 0.45; }, dom);
    AbpReport rep = abp_check(u, lower_hull(u));
    if (coarsest == 0) coarsest = rep.max_ratio;
    worst = std::max(worst, rep.max_ratio);
  }
  ok = ok && worst <= 2.0 * coarsest;
  std::ostringstream d;
  d << "1-D ratio " << rep1.max_ratio << " (want 0.5); sweep max " << worst
    << " <= 2 x coarsest " << coarsest << " = " << 2 * coarsest;
  return {ok, d.str()};
}

// --- criterion 8: Laplace scheme -----------------------------------------
Result criterion8() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    auto dom = std::make_shared<LatticeDomain>(
        ConvexDomainSpec::box(Vec2(-1, -1), Vec2(1, 1)), h,
        DirectionSet::make(2, 1));
    auto g = laplace_builtin("x1x2");
    MeshFunction w = solve_dirichlet(dom, g);
    double err = 0;
    for (int id = 0; id < dom->num_interior(); ++id)
      err = std::max(err, std::abs(w(id) - g(dom->node(id))));
    ok = ok && err <= 1e-9 && check_max_principle(w) &&
         check_comparison(w, w);
  }
  d << "box x1x2 exact<=1e-9: " << (ok ? "yes" : "no");

  std::vector<double> errs;
  auto sub = ConvexDomainSpec::ball(Vec2(0, 0), 0.5);
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    auto dom = std::make_shared<LatticeDomain>(
        ConvexDomainSpec::ball(Vec2(0, 0), 1.0), h, DirectionSet::make(2, 1));
    auto g = laplace_builtin("x1sq-x2sq");
    MeshFunction w = solve_dirichlet(dom, g);
    ok = ok && check_max_principle(w) && check_comparison(w, w);
    double err = 0;
    for (int id = 0; id < dom->num_interior(); ++id)
      if (sub.contains_closure(dom->node(id), 1e-12))
        err = std::max(err, std::abs(w(id) - g(dom->node(id))));
    errs.push_back(err);
  }
  bool strict = true;
  for (size_t i = 0; i + 1 < errs.size(); ++i)
    strict = strict && errs[i + 1] < errs[i];
  double ms = ms_since(t0);
  d << "; disk errors";
  for (double e : errs) d << ' ' << e;
  d << " strict decrease=" << (strict ? "yes" : "no") << ", runtime "
    << ms / 1000 << " s";
  return {ok && strict && ms < 60000, d.str()};
}

// --- criterion 9: barrier constants --------------------------------------
Result criterion9() {
  BarrierConstants k = barrier_constants(0.5, 3, 1.0);
  bool ok = std::abs(k.a - 6.0 / 7) <= 1e-12 &&
            std::abs(k.b - 1.0 / 7) <= 1e-12 &&
            std::abs(k.a_prime - 8.0 / 9) <= 1e-12 &&
            std::abs(k.b_prime - 1.0 / 9) <= 1e-12 &&
            std::abs(k.theta - 7.0 / 9) <= 1e-12;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  std::uniform_int_distribution<int> D(3, 9);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    BarrierConstants r = barrier_constants(U(rng), D(rng), 0.5 + U(rng));
    worst = std::max(worst,
                     std::abs(r.b_prime - r.b + r.a_prime - r.a));
  }
  ok = ok && worst <= 1e-12;
  std::ostringstream d;
  d << "a=" << k.a << " b=" << k.b << " a'=" << k.a_prime
    << " b'=" << k.b_prime << " theta=" << k.theta
    << "; identity worst dev " << worst;
  return {ok, d.str()};
}

// --- criterion 10: property suites ---------------------------------------
Result criterion10() {
  auto dom = box2(0.125);
  auto coarse = box2(0.25);
  int fails = 0;
  std::ostringstream d;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    // Gamma <= u_h nodewise and idempotence surrogate (h = 1/8, all seeds)
    MeshFunction u = sample_random_convex(random_convex_spec(seed, 2), dom);
    LowerHull hull = lower_hull(u);
    const double tol = 1e-8 * std::max(1.0, u.value_scale());
    Eigen::VectorXd gv(dom->num_nodes());
    for (int id = 0; id < dom->num_nodes(); ++id) {
      gv[id] = gamma_eval(hull, dom->node(id));
      if (gv[id] > u(id) + tol) ++fails;
    }
    MeshFunction g(dom, gv);
    if (!is_discrete_convex(g).is_discrete_convex) ++fails;
    if (!line_interpolant_is_convex(g, dom->interior_at(IVec2(0, 0)),
                                    IVec2(1, 0)))
      ++fails;
    LowerHull hull2 = lower_hull(g);
    for (double x = -0.9; x < 1; x += 0.45)
      for (double y = -0.9; y < 1; y += 0.45)
        if (std::abs(gamma_extension_eval(hull2, Vec2(x, y)) -
                     gamma_extension_eval(hull, Vec2(x, y))) > tol)
          ++fails;

    // affine invariance and scaling of delta_e, cells, weights (coarser grid)
    MeshFunction uc =
        sample_random_convex(random_convex_spec(seed, 2), coarse);
    const Vec2 a(0.4, -0.6);
    Eigen::VectorXd sh = uc.values();
    Eigen::VectorXd sc = 2.0 * uc.values();
    for (int id = 0; id < coarse->num_nodes(); ++id)
      sh[id] += a.dot(coarse->node(id)) + 1.0;
    MeshFunction v(coarse, sh), w(coarse, sc);
    LowerHull hu = lower_hull(uc), hv = lower_hull(v), hw = lower_hull(w);
    for (int id = 0; id < coarse->num_interior(); id += 7) {
      if (std::abs(delta_e(v, id, IVec2(1, 1)) -
                   delta_e(uc, id, IVec2(1, 1))) > 1e-9)
        ++fails;
      double wt = ma_weight(uc, hu, id, DensitySpec::unit());
      if (std::abs(ma_weight(v, hv, id, DensitySpec::unit()) - wt) >
          1e-8 * (1 + wt))
        ++fails;
      if (std::abs(ma_weight(w, hw, id, DensitySpec::unit()) - 4 * wt) >
          1e-8 * (1 + wt))
        ++fails;
      SlopeCell cu = discrete_subdifferential(uc, id);
      SlopeCell cv = discrete_subdifferential(v, id);
      if (cu.empty() != cv.empty()) ++fails;
      if (!cu.empty()) {
        std::vector<Vec2> moved = cu.verts;
        for (Vec2& p : moved) p += a;
        if (hausdorff(moved, cv.verts) > 1e-8) ++fails;
      }
    }
  }
  d << fails << " property violations across 100 seeded instances";
  return {fails == 0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <criterion 1..10>\n";
    return 2;
  }
  int c = std::atoi(argv[1]);
  Result r{false, "unknown criterion"};
  try {
    switch (c) {
      case 1: r = criterion1(); break;
      case 2: r = criterion2(); break;
      case 3: r = criterion3(); break;
      case 4: r = criterion4(); break;
      case 5: r = criterion5(); break;
      case 6: r = criterion6(); break;
      case 7: r = criterion7(); break;
      case 8: r = criterion8(); break;
      case 9: r = criterion9(); break;
      case 10: r = criterion10(); break;
      default: std::cerr << "criterion out of range\n"; return 2;
    }
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  std::cout << "criterion " << c << ": " << (r.pass ? "PASS" : "FAIL")
            << " — " << r.detail << "\n";
  return r.pass ? 0 : 1;
}
