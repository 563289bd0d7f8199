#include "dma/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "dma/envelope.hpp"
#include "dma/laplace.hpp"
#include "dma/polygon.hpp"

namespace dma {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

ConvexDomainSpec parse_domain(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw FormatError("domain: expected kind:args, got " + text);
  std::string kind = text.substr(0, colon);
  std::string args = text.substr(colon + 1);
  if (kind == "segment") {
    auto v = parse_numbers(args);
    if (v.size() != 2) throw FormatError("domain: segment:a,b");
    return ConvexDomainSpec::segment(v[0], v[1]);
  }
  if (kind == "box") {
    auto v = parse_numbers(args);
    if (v.size() == 2) return ConvexDomainSpec::segment(v[0], v[1]);
    if (v.size() != 4) throw FormatError("domain: box:x0,y0,x1,y1");
    return ConvexDomainSpec::box(Vec2(v[0], v[1]), Vec2(v[2], v[3]));
  }
  if (kind == "ball") {
    auto v = parse_numbers(args);
    if (v.size() != 3) throw FormatError("domain: ball:cx,cy,r");
    return ConvexDomainSpec::ball(Vec2(v[0], v[1]), v[2]);
  }
  if (kind == "polygon") {
    std::ifstream f(args);
    if (!f) throw FormatError("domain: cannot open polygon file " + args);
    std::vector<Vec2> verts;
    double x, y;
    while (f >> x >> y) verts.emplace_back(x, y);
    return ConvexDomainSpec::polygon(std::move(verts));
  }
  throw FormatError("domain: unknown kind " + kind);
}

TestFunction builtin_function(const std::string& name, int dim) {
  TestFunction f;
  f.name = name;
  if (name == "quadratic") {
    f.value = [](const Vec2& x) { return 0.5 * x.squaredNorm(); };
    f.gradient = [](const Vec2& x) { return x; };
    f.hessian_det = [](const Vec2&) { return 1.0; };
    return f;
  }
  if (name == "anisotropic-quadratic") {
    f.value = [](const Vec2& x) {
      return x.x() * x.x() + 0.5 * x.y() * x.y();
    };
    f.gradient = [](const Vec2& x) { return Vec2(2 * x.x(), x.y()); };
    f.hessian_det = [dim](const Vec2&) { return dim == 1 ? 2.0 : 2.0; };
    return f;
  }
  if (name == "abs1norm") {
    f.value = [dim](const Vec2& x) {
      return std::abs(x.x()) + (dim == 2 ? std::abs(x.y()) : 0.0);
    };
    return f;
  }
  if (name == "cone") {
    f.value = [dim](const Vec2& x) {
      return dim == 1 ? std::abs(x.x()) : x.norm();
    };
    return f;
  }
  if (name == "affine") {
    f.value = [](const Vec2& x) { return 0.5 * x.x() - 0.25 * x.y() + 1.0; };
    f.gradient = [](const Vec2&) { return Vec2(0.5, -0.25); };
    f.hessian_det = [](const Vec2&) { return 0.0; };
    return f;
  }
  throw DomainError("builtin_function: unknown function " + name);
}

RandomConvexSpec random_convex_spec(std::uint64_t seed, int dim) {
  std::mt19937_64 rng(0x5EED0000u + seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  RandomConvexSpec spec;
  spec.seed = seed;
  spec.dim = dim;
  double l1 = 0.5 + 1.5 * U(rng);
  double l2 = 0.5 + 1.5 * U(rng);
  double ang = 2.0 * kPi * U(rng);
  if (dim == 1) {
    spec.A << l1, 0, 0, 0;
    spec.b = Vec2(2.0 * U(rng) - 1.0, 0);
    return spec;
  }
  Eigen::Matrix2d Q;
  Q << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
  Eigen::Matrix2d D = Eigen::Vector2d(l1, l2).asDiagonal();
  spec.A = Q * D * Q.transpose();
  spec.b = Vec2(2.0 * U(rng) - 1.0, 2.0 * U(rng) - 1.0);
  return spec;
}

double rc_value(const RandomConvexSpec& spec, const Vec2& x) {
  return 0.5 * x.dot(spec.A * x) + spec.b.dot(x);
}

MeshFunction sample_random_convex(const RandomConvexSpec& spec,
                                  std::shared_ptr<const LatticeDomain> dom) {
  Eigen::VectorXd vals(dom->num_nodes());
  for (int id = 0; id < dom->num_nodes(); ++id)
    vals[id] = rc_value(spec, dom->node(id));
  std::mt19937_64 rng(0x5EED1111u ^ spec.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double h2 = dom->h() * dom->h();
  for (int id = 0; id < dom->num_interior(); ++id) {
    double pick = U(rng), amp = U(rng);
    if (pick < 0.2) vals[id] += (0.25 + 0.75 * amp) * h2;
  }
  return MeshFunction(std::move(dom), std::move(vals));
}

namespace {

// 4-point Gauss-Legendre on [0,1].
const double kGx[4] = {0.069431844202973712, 0.33000947820757187,
                       0.66999052179242813, 0.93056815579702629};
const double kGw[4] = {0.17392742256872693, 0.32607257743127307,
                       0.32607257743127307, 0.17392742256872693};

double panels_1d(const std::function<double(double)>& f, double a, double b,
                 int n) {
  double s = 0, w = (b - a) / n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < 4; ++i) s += kGw[i] * w * f(a + (k + kGx[i]) * w);
  return s;
}

double panels_2d(const std::function<double(double, double)>& f, double a,
                 double b, double c, double d, int n) {
  double s = 0, wx = (b - a) / n, wy = (d - c) / n;
  for (int kx = 0; kx < n; ++kx)
    for (int i = 0; i < 4; ++i) {
      double x = a + (kx + kGx[i]) * wx;
      for (int ky = 0; ky < n; ++ky)
        for (int j = 0; j < 4; ++j)
          s += kGw[i] * kGw[j] * wx * wy * f(x, c + (ky + kGx[j]) * wy);
    }
  return s;
}

double adapt(const std::function<double(int)>& level_value) {
  double prev = level_value(1);
  for (int n = 2; n <= 256; n *= 2) {
    double cur = level_value(n);
    if (std::abs(cur - prev) <= 1e-8 * std::max(1.0, std::abs(cur)))
      return cur;
    prev = cur;
  }
  throw QuadratureNotConverged("reference_measure: quadrature not converged");
}

}  // namespace

double reference_measure(const TestFunction& f, const QueryRegion& E,
                         const DensitySpec& R) {
  if (!f.gradient || !f.hessian_det)
    throw DomainError(
        "reference_measure: function lacks gradient/Hessian; supply an "
        "explicit reference value");
  auto integrand = [&](const Vec2& x) {
    return R(f.gradient(x)) * f.hessian_det(x);
  };
  if (E.dim == 1) {
    return adapt([&](int n) {
      return panels_1d(
          [&](double x) { return integrand(Vec2(x, 0)); }, E.lo.x(), E.hi.x(),
          4 * n);
    });
  }
  switch (E.kind) {
    case DomainKind::Box:
      return adapt([&](int n) {
        return panels_2d(
            [&](double x, double y) { return integrand(Vec2(x, y)); },
            E.lo.x(), E.hi.x(), E.lo.y(), E.hi.y(), 4 * n);
      });
    case DomainKind::Ball:
      return adapt([&](int n) {
        return panels_2d(
            [&](double r, double phi) {
              Vec2 x = E.center + r * Vec2(std::cos(phi), std::sin(phi));
              return integrand(x) * r;
            },
            0.0, E.radius, 0.0, 2.0 * kPi, 4 * n);
      });
    case DomainKind::Polygon: {
      Vec2 c = Vec2::Zero();
      for (const Vec2& v : E.vertices) c += v;
      c /= static_cast<double>(E.vertices.size());
      return adapt([&](int n) {
        // Map each fan triangle from the unit square (Duffy-style).
        double s = 0;
        const size_t m = E.vertices.size();
        for (size_t k = 0; k < m; ++k) {
          const Vec2 &A = c, &B = E.vertices[k], &C = E.vertices[(k + 1) % m];
          double area2 = std::abs(cross(A, B, C));
          s += panels_2d(
              [&](double a, double b) {
                Vec2 x = A + a * (B - A) + a * b * (C - B);
                return integrand(x) * a * area2;
              },
              0.0, 1.0, 0.0, 1.0, 4 * n);
        }
        return s;
      });
    }
  }
  throw DomainError("reference_measure: unsupported region");
}

ExperimentConfig ExperimentConfig::parse(std::istream& is) {
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      auto last = s.find_last_not_of(" \t\r");
      s.erase(last == std::string::npos ? 0 : last + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) continue;
    if (key == "experiment") cfg.kind = val;
    else if (key == "domain") cfg.domain = parse_domain(val);
    else if (key == "function") cfg.function = val;
    else if (key == "density") {
      if (val == "unit") cfg.density = DensitySpec::unit();
      else if (val.rfind("rq:", 0) == 0)
        cfg.density = DensitySpec::rational_quadratic(std::stod(val.substr(3)));
      else throw FormatError("config: unknown density " + val);
    } else if (key == "h") cfg.hs = parse_numbers(val);
    else if (key == "region") cfg.region = parse_domain(val);
    else if (key == "subset") cfg.subset = parse_domain(val);
    else if (key == "threshold") cfg.threshold = std::stod(val);
    else if (key == "reference") cfg.reference = (val == "pi") ? kPi : std::stod(val);
    else if (key == "stencil") cfg.stencil = std::stoi(val);
    else if (key == "g") cfg.g = val;
    else if (key == "output") cfg.output = val;
    else if (key == "svg") cfg.svg = val;
    else throw FormatError("config: unknown key " + key);
  }
  if (cfg.kind.empty()) throw FormatError("config: missing experiment kind");
  if (cfg.hs.empty()) throw FormatError("config: missing h list");
  for (size_t i = 0; i + 1 < cfg.hs.size(); ++i)
    if (cfg.hs[i + 1] >= cfg.hs[i])
      throw FormatError("config: h list must be strictly decreasing");
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("config: cannot open " + path);
  return parse(f);
}

namespace {

MeshFunction sample_test_function(const ExperimentConfig& cfg,
                                  std::shared_ptr<const LatticeDomain> dom,
                                  TestFunction* out_f) {
  if (cfg.function.rfind("random-convex", 0) == 0) {
    std::uint64_t seed = 0;
    auto open = cfg.function.find('(');
    if (open != std::string::npos)
      seed = std::stoull(cfg.function.substr(open + 1));
    RandomConvexSpec spec = random_convex_spec(seed, dom->dim());
    if (out_f) {
      out_f->name = cfg.function;
      out_f->value = [spec](const Vec2& x) { return rc_value(spec, x); };
    }
    return sample_random_convex(spec, std::move(dom));
  }
  TestFunction f = builtin_function(cfg.function, dom->dim());
  if (out_f) *out_f = f;
  return sample(f.value, std::move(dom));
}

bool nonincreasing(const std::vector<ConvergenceRow>& rows, double slack) {
  for (size_t i = 0; i + 1 < rows.size(); ++i)
    if (rows[i + 1].error > rows[i].error + slack) return false;
  return true;
}

}  // namespace

ExperimentResult run_weak_convergence(const ExperimentConfig& cfg) {
  if (!cfg.region) throw FormatError("weak-convergence: region required");
  ExperimentResult res;
  TestFunction f;
  double ref = 0;
  bool ref_done = false;
  for (double h : cfg.hs) {
    auto t0 = std::chrono::steady_clock::now();
    auto dom = std::make_shared<LatticeDomain>(
        cfg.domain, h, DirectionSet::make(cfg.domain.dim, cfg.stencil));
    MeshFunction u = sample_test_function(cfg, dom, &f);
    LowerHull hull = lower_hull(u);
    AtomicMeasure m = compute_weights(u, hull, cfg.density);
    double discrete = measure_of_region(m, *cfg.region);
    if (!ref_done) {
      ref = cfg.reference ? *cfg.reference
                          : reference_measure(f, *cfg.region, cfg.density);
      ref_done = true;
    }
    res.rows.push_back(
        {h, discrete, ref, std::abs(discrete - ref), ms_since(t0)});
  }
  double final_err = res.rows.back().error;
  double rel = final_err / std::max(std::abs(ref), 1e-30);
  res.pass = (std::abs(ref) > 0 ? rel : final_err) <= cfg.threshold;
  std::ostringstream msg;
  msg << "final relative error " << rel << " (threshold " << cfg.threshold
      << ")";
  res.message = msg.str();
  return res;
}

ExperimentResult run_boundary_limit(const ExperimentConfig& cfg) {
  ExperimentResult res;
  std::ostringstream masses;
  masses << "total_mass per h:";
  double osc = 0;
  for (double h : cfg.hs) {
    auto t0 = std::chrono::steady_clock::now();
    auto dom = std::make_shared<LatticeDomain>(
        cfg.domain, h, DirectionSet::make(cfg.domain.dim, cfg.stencil));
    TestFunction f;
    MeshFunction u = sample_test_function(cfg, dom, &f);
    ConvexityReport rep = is_discrete_convex(u);
    if (!rep.is_discrete_convex)
      throw NotDiscreteConvex("boundary-limit: sampled data not convex");
    LowerHull hull = lower_hull(u);

    std::vector<Vec2> bpts;
    Eigen::VectorXd bvals(dom->num_boundary());
    double glo = std::numeric_limits<double>::infinity(), ghi = -glo;
    for (int id = dom->num_interior(); id < dom->num_nodes(); ++id) {
      bpts.push_back(dom->node(id));
      double g = f.value(dom->node(id));
      bvals[id - dom->num_interior()] = g;
      glo = std::min(glo, g);
      ghi = std::max(ghi, g);
    }
    osc = ghi - glo;
    LowerHull bh = lower_hull_points(bpts, bvals, dom->dim());

    double gap = 0;
    for (int id = 0; id < dom->num_nodes(); ++id) {
      const Vec2& z = dom->node(id);
      if (dom->is_interior(id) &&
          dom->spec().boundary_distance(z) > 2.0 * h + 1e-12)
        continue;
      gap = std::max(gap, std::abs(hull.eval(z) - bh.extension_eval(z)));
    }
    double mass = total_mass(u, hull);
    masses << ' ' << mass;
    res.rows.push_back({h, gap, 0.0, gap, ms_since(t0)});
  }
  const double slack = 1e-12 * std::max(1.0, osc);
  res.pass = nonincreasing(res.rows, slack) &&
             res.rows.back().error <= cfg.threshold * std::max(osc, 1e-30);
  res.message = masses.str();
  return res;
}

ExperimentResult run_laplace_convergence(const ExperimentConfig& cfg) {
  ExperimentResult res;
  auto g = laplace_builtin(cfg.g);
  const QueryRegion subset = cfg.subset ? *cfg.subset : cfg.domain;
  for (double h : cfg.hs) {
    auto t0 = std::chrono::steady_clock::now();
    auto dom = std::make_shared<LatticeDomain>(
        cfg.domain, h, DirectionSet::make(cfg.domain.dim, 1));
    MeshFunction w = solve_dirichlet(dom, g);
    double err = 0;
    for (int id = 0; id < dom->num_interior(); ++id)
      if (subset.contains_closure(dom->node(id), 1e-12))
        err = std::max(err, std::abs(w(id) - g(dom->node(id))));
    res.rows.push_back({h, err, 0.0, err, ms_since(t0)});
  }
  bool strict = true;
  for (size_t i = 0; i + 1 < res.rows.size(); ++i)
    if (res.rows[i + 1].error >= res.rows[i].error &&
        res.rows[i].error > 1e-12)
      strict = false;
  res.pass = strict;
  res.message = strict ? "errors decrease monotonically"
                       : "errors do not decrease monotonically";
  return res;
}

ExperimentResult run_mass_sweep(const ExperimentConfig& cfg) {
  ExperimentResult res;
  TestFunction f;
  double ref = 0;
  bool ref_done = false;
  for (double h : cfg.hs) {
    auto t0 = std::chrono::steady_clock::now();
    auto dom = std::make_shared<LatticeDomain>(
        cfg.domain, h, DirectionSet::make(cfg.domain.dim, cfg.stencil));
    MeshFunction u = sample_test_function(cfg, dom, &f);
    LowerHull hull = lower_hull(u);
    double mass = total_mass(u, hull);
    if (!ref_done) {
      ref = cfg.reference ? *cfg.reference
                          : reference_measure(f, cfg.domain, cfg.density);
      ref_done = true;
    }
    res.rows.push_back({h, mass, ref, std::abs(mass - ref), ms_since(t0)});
  }
  res.pass = nonincreasing(res.rows, 1e-12 * std::max(1.0, std::abs(ref)));
  res.message = res.pass ? "mass errors nonincreasing"
                         : "mass errors increase along the sweep";
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  if (cfg.kind == "weak-convergence") res = run_weak_convergence(cfg);
  else if (cfg.kind == "boundary-limit") res = run_boundary_limit(cfg);
  else if (cfg.kind == "laplace-convergence")
    res = run_laplace_convergence(cfg);
  else if (cfg.kind == "mass-sweep") res = run_mass_sweep(cfg);
  else throw FormatError("run_experiment: unknown kind " + cfg.kind);
  if (!cfg.output.empty()) write_csv(res.rows, cfg.output);
  if (!cfg.svg.empty()) write_svg(res.rows, cfg.svg);
  return res;
}

void write_csv(const std::vector<ConvergenceRow>& rows,
               const std::string& path) {
  std::ofstream f(path);
  if (!f) throw FormatError("write_csv: cannot open " + path);
  f.precision(17);
  f << "h,discrete,reference,error,runtime_ms\n";
  for (const ConvergenceRow& r : rows)
    f << r.h << ',' << r.discrete << ',' << r.reference << ',' << r.error
      << ',' << r.runtime_ms << '\n';
}

void write_svg(const std::vector<ConvergenceRow>& rows,
               const std::string& path) {
  std::ofstream f(path);
  if (!f) throw FormatError("write_svg: cannot open " + path);
  const double W = 360, H = 300, M = 40;
  auto lg = [](double v) { return std::log10(std::max(v, 1e-16)); };
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& r : rows) {
    x0 = std::min(x0, lg(r.h));
    x1 = std::max(x1, lg(r.h));
    y0 = std::min(y0, lg(r.error));
    y1 = std::max(y1, lg(r.error));
  }
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
    << "\" height=\"" << H << "\">\n";
  f << "<rect width=\"" << W << "\" height=\"" << H
    << "\" fill=\"white\" stroke=\"black\"/>\n";
  f << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" "
       "points=\"";
  for (const auto& r : rows) {
    double px = M + (lg(r.h) - x0) / (x1 - x0) * (W - 2 * M);
    double py = H - M - (lg(r.error) - y0) / (y1 - y0) * (H - 2 * M);
    f << px << ',' << py << ' ';
  }
  f << "\"/>\n</svg>\n";
}

}  // namespace dma
