#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "dma/envelope.hpp"
#include "dma/experiments.hpp"
#include "dma/laplace.hpp"
#include "dma/lattice.hpp"
#include "dma/measure.hpp"
#include "dma/meshfn.hpp"
#include "dma/subdiff.hpp"

namespace {

using namespace dma;

struct Common {
  std::string domain = "box:-1,-1,1,1";
  int stencil = 2;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--domain", c.domain,
                  "box:x0,y0,x1,y1 | ball:cx,cy,r | segment:a,b | "
                  "polygon:file");
  app->add_option("--stencil", c.stencil, "stencil radius r_V");
}

std::shared_ptr<const LatticeDomain> make_dom(const Common& c, double h) {
  ConvexDomainSpec spec = parse_domain(c.domain);
  return std::make_shared<LatticeDomain>(
      spec, h, DirectionSet::make(spec.dim, c.stencil));
}

// The mafn header carries d and h; the domain shape comes from --domain.
MeshFunction load_mafn(const std::string& path, const Common& c) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path);
  std::string header;
  std::getline(f, header);
  double h = 0;
  auto pos = header.find("h=");
  if (header.rfind("mafn v1", 0) != 0 || pos == std::string::npos)
    throw FormatError("bad mafn header in " + path);
  h = std::stod(header.substr(pos + 2));
  f.seekg(0);
  return MeshFunction::read(f, make_dom(c, h));
}

Vec2 parse_point(const std::string& text) {
  std::istringstream is(text);
  double x = 0, y = 0;
  char comma;
  is >> x;
  if (is >> comma >> y) {
  }
  return Vec2(x, y);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Monge-Ampere measures on lattice domains"};
  app.require_subcommand(1);

  Common common;
  double opt_h = 0.25;
  std::string mafn_file, at_text, dir_text, out_path, density_text = "unit",
                                                      box_text, g_name = "affine",
                                                      config_path, hull_path;
  double mu = 0.5, eta = 1.0;
  int dpar = 3;

  // lattice dump
  auto* lattice = app.add_subcommand("lattice", "lattice operations");
  auto* ldump = lattice->add_subcommand("dump", "print nodes as I/B lines");
  add_common(ldump, common);
  ldump->set_help_flag("--help", "print help");  // frees -h for mesh size
  ldump->add_option("--h", opt_h, "mesh size")->required();

  // mafn
  auto* mafn = app.add_subcommand("mafn", "mesh-function file operations");
  auto* mcheck = mafn->add_subcommand("check-convex", "discrete convexity");
  mcheck->add_option("file", mafn_file)->required();
  add_common(mcheck, common);
  auto* mdelta = mafn->add_subcommand("delta", "directional second difference");
  mdelta->add_option("file", mafn_file)->required();
  mdelta->add_option("--at", at_text, "node coordinates x[,y]")->required();
  mdelta->add_option("--dir", dir_text, "integer direction ex[,ey]")
      ->required();
  add_common(mdelta, common);

  // envelope
  auto* env = app.add_subcommand("envelope", "convex envelope");
  auto* ebuild = env->add_subcommand("build", "write hull faces");
  ebuild->add_option("file", mafn_file)->required();
  ebuild->add_option("--out", out_path);
  add_common(ebuild, common);
  auto* eeval = env->add_subcommand("eval", "evaluate a hull dump");
  eeval->add_option("hull", hull_path)->required();
  eeval->add_option("--at", at_text)->required();
  auto* econtact = env->add_subcommand("contact", "contact node ids");
  econtact->add_option("file", mafn_file)->required();
  add_common(econtact, common);

  // subdiff
  auto* sub = app.add_subcommand("subdiff", "discrete subdifferentials");
  auto* scell = sub->add_subcommand("cell", "cell at a node");
  scell->add_option("file", mafn_file)->required();
  scell->add_option("--at", at_text)->required();
  add_common(scell, common);
  auto* sequiv = sub->add_subcommand("check-equiv", "equivalence suite");
  sequiv->add_option("file", mafn_file)->required();
  add_common(sequiv, common);

  // measure
  auto* meas = app.add_subcommand("measure", "MA measures");
  auto* mweights = meas->add_subcommand("weights", "per-node weights CSV");
  mweights->add_option("file", mafn_file)->required();
  mweights->add_option("--density", density_text, "unit | rq:<c>");
  add_common(mweights, common);
  auto* mtotal = meas->add_subcommand("total", "total MA mass");
  mtotal->add_option("file", mafn_file)->required();
  add_common(mtotal, common);
  auto* mregion = meas->add_subcommand("region", "measure of a box region");
  mregion->add_option("file", mafn_file)->required();
  mregion->add_option("--box", box_text, "x0,y0,x1,y1")->required();
  add_common(mregion, common);

  // laplace
  auto* lap = app.add_subcommand("laplace", "discrete Laplace scheme");
  auto* lsolve = lap->add_subcommand("solve", "Dirichlet solve, mafn output");
  add_common(lsolve, common);
  lsolve->set_help_flag("--help", "print help");  // frees -h for mesh size
  lsolve->add_option("--h", opt_h)->required();
  lsolve->add_option("--g", g_name, "boundary data builtin");
  auto* lbar = lap->add_subcommand("barrier", "barrier constants CSV");
  lbar->add_option("--mu", mu)->required();
  lbar->add_option("--d", dpar)->required();
  lbar->add_option("--eta", eta)->required();

  // run
  auto* run = app.add_subcommand("run", "refinement experiments");
  run->allow_extras();
  std::string exp_kind;
  run->add_option("kind", exp_kind,
                  "weak-convergence | boundary-limit | laplace-convergence | "
                  "mass-sweep")
      ->required();
  run->add_option("--config", config_path)->required();

  CLI11_PARSE(app, argc, argv);

  std::cout.precision(17);
  try {
    if (ldump->parsed()) {
      make_dom(common, opt_h)->dump(std::cout);
      return 0;
    }
    if (mcheck->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      ConvexityReport rep = is_discrete_convex(u);
      std::cout << (rep.is_discrete_convex ? "convex" : "not-convex")
                << " min_delta=" << rep.min_delta << '\n';
      for (const auto& v : rep.violations)
        std::cout << "violation node=" << v.node << " dir=" << v.direction.x()
                  << ',' << v.direction.y() << " delta=" << v.delta << '\n';
      return rep.is_discrete_convex ? 0 : 1;
    }
    if (mdelta->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      Vec2 at = parse_point(at_text);
      Vec2 dir = parse_point(dir_text);
      const LatticeDomain& dom = u.dom();
      int id = -1;
      for (int i = 0; i < dom.num_interior(); ++i)
        if ((dom.node(i) - at).cwiseAbs().maxCoeff() <= 1e-9) id = i;
      if (id < 0) throw MissingNode("no interior node at the given point");
      std::cout << delta_e(u, id,
                           IVec2(static_cast<int>(std::lround(dir.x())),
                                 static_cast<int>(std::lround(dir.y()))))
                << '\n';
      return 0;
    }
    if (ebuild->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      LowerHull hull = lower_hull(u);
      if (out_path.empty()) {
        hull.dump(std::cout);
      } else {
        std::ofstream f(out_path);
        hull.dump(f);
      }
      return 0;
    }
    if (eeval->parsed()) {
      std::ifstream f(hull_path);
      if (!f) throw FormatError("cannot open " + hull_path);
      // A hull dump is a max of affine pieces; evaluation needs no topology.
      std::string line;
      double best = -std::numeric_limits<double>::infinity();
      Vec2 at = parse_point(at_text);
      while (std::getline(f, line)) {
        if (line.empty() || line[0] != 'F') continue;
        std::istringstream ls(line.substr(1));
        std::vector<double> nums;
        double v;
        while (ls >> v) nums.push_back(v);
        if (nums.size() >= 6)  // d=2: p1 p2 b v1 v2 v3
          best = std::max(best, nums[0] * at.x() + nums[1] * at.y() + nums[2]);
        else if (nums.size() >= 4)  // d=1: p1 b v1 v2
          best = std::max(best, nums[0] * at.x() + nums[1]);
      }
      std::cout << best << '\n';
      return 0;
    }
    if (econtact->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      LowerHull hull = lower_hull(u);
      for (int id : contact_set(u, hull).nodes) std::cout << id << '\n';
      return 0;
    }
    if (scell->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      Vec2 at = parse_point(at_text);
      const LatticeDomain& dom = u.dom();
      int id = -1;
      for (int i = 0; i < dom.num_interior(); ++i)
        if ((dom.node(i) - at).cwiseAbs().maxCoeff() <= 1e-9) id = i;
      if (id < 0) throw MissingNode("no interior node at the given point");
      dump_cell(std::cout, id, discrete_subdifferential(u, id));
      return 0;
    }
    if (sequiv->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      LowerHull hull = lower_hull(u);
      for (int id = 0; id < u.dom().num_interior(); ++id)
        equivalence_check(u, hull, id);
      std::cout << "all " << u.dom().num_interior()
                << " interior nodes pass equivalence\n";
      return 0;
    }
    if (mweights->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      DensitySpec R = DensitySpec::unit();
      if (density_text.rfind("rq:", 0) == 0)
        R = DensitySpec::rational_quadratic(std::stod(density_text.substr(3)));
      else if (density_text != "unit")
        throw FormatError("unknown density " + density_text);
      LowerHull hull = lower_hull(u);
      compute_weights(u, hull, R).dump_csv(std::cout);
      return 0;
    }
    if (mtotal->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      LowerHull hull = lower_hull(u);
      std::cout << total_mass(u, hull) << '\n';
      return 0;
    }
    if (mregion->parsed()) {
      MeshFunction u = load_mafn(mafn_file, common);
      LowerHull hull = lower_hull(u);
      AtomicMeasure m = compute_weights(u, hull, DensitySpec::unit());
      std::cout << measure_of_region(m, parse_domain("box:" + box_text))
                << '\n';
      return 0;
    }
    if (lsolve->parsed()) {
      MeshFunction w = solve_dirichlet(make_dom(common, opt_h),
                                       laplace_builtin(g_name));
      w.write(std::cout);
      return 0;
    }
    if (lbar->parsed()) {
      BarrierConstants k = barrier_constants(mu, dpar, eta);
      std::cout << "theta,a,b,a_prime,b_prime,gamma\n"
                << k.theta << ',' << k.a << ',' << k.b << ',' << k.a_prime
                << ',' << k.b_prime << ',' << k.gamma << '\n';
      return 0;
    }
    if (run->parsed()) {
      ExperimentConfig cfg = ExperimentConfig::parse_file(config_path);
      if (cfg.kind != exp_kind)
        throw FormatError("config experiment kind does not match argument");
      ExperimentResult res = run_experiment(cfg);
      for (const auto& r : res.rows)
        std::cout << "h=" << r.h << " discrete=" << r.discrete
                  << " reference=" << r.reference << " error=" << r.error
                  << " runtime_ms=" << r.runtime_ms << '\n';
      std::cout << (res.pass ? "PASS " : "FAIL ") << res.message << '\n';
      return res.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
