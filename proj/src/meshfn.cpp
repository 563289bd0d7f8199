#include "dma/meshfn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace dma {

MeshFunction::MeshFunction(std::shared_ptr<const LatticeDomain> dom,
                           Eigen::VectorXd values)
    : dom_(std::move(dom)), values_(std::move(values)) {
  if (values_.size() != dom_->num_nodes())
    throw DomainError("MeshFunction: one value per node required");
  if (!values_.allFinite())
    throw NonFiniteValue("MeshFunction: non-finite value");
}

double MeshFunction::lipschitz_ratio_max() const {
  if (lip_cache_ >= 0) return lip_cache_;
  const int n = dom_->num_nodes();
  const std::size_t total =
      static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t stride = std::max<std::size_t>(1, total / 1000000);
  double best = 0;
  std::size_t c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (c++ % stride != 0) continue;
      double d = (dom_->node(i) - dom_->node(j)).norm();
      if (d > 0) best = std::max(best, std::abs(values_[i] - values_[j]) / d);
    }
  lip_cache_ = best;
  return best;
}

void MeshFunction::write(std::ostream& os) const {
  os.precision(17);
  os << "mafn v1 d=" << dom_->dim() << " h=" << dom_->h() << '\n';
  for (int id = 0; id < dom_->num_nodes(); ++id) {
    os << id << ' ' << dom_->node(id).x();
    if (dom_->dim() == 2) os << ' ' << dom_->node(id).y();
    os << ' ' << values_[id] << '\n';
  }
}

MeshFunction MeshFunction::read(std::istream& is,
                                std::shared_ptr<const LatticeDomain> dom) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("mafn v1", 0) != 0)
    throw FormatError("mafn: bad header");
  Eigen::VectorXd vals(dom->num_nodes());
  vals.setZero();
  std::string line;
  int count = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int id;
    double x, y = 0, v;
    ls >> id >> x;
    if (dom->dim() == 2) ls >> y;
    ls >> v;
    if (!ls) throw FormatError("mafn: bad line: " + line);
    if (id < 0 || id >= dom->num_nodes())
      throw FormatError("mafn: node id out of range");
    if ((dom->node(id) - Vec2(x, y)).cwiseAbs().maxCoeff() > 1e-8 * dom->h())
      throw FormatError("mafn: node coordinates do not match the lattice");
    vals[id] = v;
    ++count;
  }
  if (count != dom->num_nodes())
    throw FormatError("mafn: wrong number of node lines");
  return MeshFunction(std::move(dom), std::move(vals));
}

MeshFunction sample(const std::function<double(const Vec2&)>& f,
                    std::shared_ptr<const LatticeDomain> dom) {
  Eigen::VectorXd vals(dom->num_nodes());
  for (int id = 0; id < dom->num_nodes(); ++id) {
    vals[id] = f(dom->node(id));
    if (!std::isfinite(vals[id]))
      throw NonFiniteValue("sample: f not finite at a node");
  }
  return MeshFunction(std::move(dom), std::move(vals));
}

MeshFunction sample_boundary(const std::function<double(const Vec2&)>& g,
                             double interior_fill,
                             std::shared_ptr<const LatticeDomain> dom) {
  Eigen::VectorXd vals(dom->num_nodes());
  for (int id = 0; id < dom->num_nodes(); ++id) {
    vals[id] = dom->is_interior(id) ? interior_fill : g(dom->node(id));
    if (!std::isfinite(vals[id]))
      throw NonFiniteValue("sample_boundary: g not finite at a node");
  }
  return MeshFunction(std::move(dom), std::move(vals));
}

double delta_e(const MeshFunction& u, int interior_id, const IVec2& e) {
  const LatticeDomain& dom = u.dom();
  int dp = dom.stencil().find(e);
  int dm = dom.stencil().find(-e);
  if (dp < 0 || dm < 0)
    throw MissingNode("delta_e: direction not in the stencil");
  double hp = dom.boundary_step(interior_id, e);
  double hm = dom.boundary_step(interior_id, -e);
  int ip = dom.ray_endpoint(interior_id, dp);
  int im = dom.ray_endpoint(interior_id, dm);
  if (ip < 0 || im < 0) throw MissingNode("delta_e: stencil endpoint missing");
  double ux = u(interior_id);
  return 2.0 / (hp + hm) *
         ((u(ip) - ux) / hp + (u(im) - ux) / hm);
}

ConvexityReport is_discrete_convex(const MeshFunction& u) {
  const LatticeDomain& dom = u.dom();
  ConvexityReport rep;
  const double tol = 1e-12 * (u.value_scale() + 1.0);
  for (int id = 0; id < dom.num_interior(); ++id)
    for (int di : dom.stencil().representatives()) {
      const IVec2& e = dom.stencil().directions[di];
      double d = delta_e(u, id, e);
      rep.min_delta = std::min(rep.min_delta, d);
      if (d < -tol) rep.violations.push_back({id, e, d});
    }
  rep.is_discrete_convex = rep.violations.empty();
  return rep;
}

bool line_interpolant_is_convex(const MeshFunction& u, int interior_id,
                                const IVec2& e) {
  const LatticeDomain& dom = u.dom();
  int dp = dom.stencil().find(e);
  int dm = dom.stencil().find(-e);
  if (dp < 0 || dm < 0)
    throw MissingNode("line_interpolant_is_convex: direction not in stencil");

  // Walk the lattice line through x0 in both directions, then append the
  // boundary hits.
  std::vector<std::pair<double, int>> line;  // (parameter, node id)
  IVec2 k0 = dom.lattice_coords(interior_id);
  int kmin = 0, kmax = 0;
  for (int k = 0;; ++k) {
    int id = dom.interior_at(k0 + k * e);
    if (id < 0) break;
    line.push_back({static_cast<double>(k) * dom.h(), id});
    kmax = k;
  }
  for (int k = -1;; --k) {
    int id = dom.interior_at(k0 + k * e);
    if (id < 0) break;
    line.push_back({static_cast<double>(k) * dom.h(), id});
    kmin = k;
  }
  int id_hi = dom.interior_at(k0 + kmax * e);
  int id_lo = dom.interior_at(k0 + kmin * e);
  line.push_back({kmax * dom.h() + dom.boundary_step(id_hi, e),
                  dom.ray_endpoint(id_hi, dp)});
  line.push_back({kmin * dom.h() - dom.boundary_step(id_lo, -e),
                  dom.ray_endpoint(id_lo, dm)});
  std::sort(line.begin(), line.end());
  line.erase(std::unique(line.begin(), line.end(),
                         [](auto& a, auto& b) {
                           return std::abs(a.first - b.first) < 1e-14;
                         }),
             line.end());
  if (line.size() < 3)
    throw DegenerateLine("line_interpolant_is_convex: fewer than 3 nodes");

  const double tol = 1e-12 * (u.value_scale() + 1.0);
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < line.size(); ++i) {
    double ds = line[i + 1].first - line[i].first;
    double slope = (u(line[i + 1].second) - u(line[i].second)) / ds;
    if (slope < prev_slope - tol) return false;
    prev_slope = slope;
  }
  return true;
}

}  // namespace dma
