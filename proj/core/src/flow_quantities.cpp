#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "flow_internal.hpp"
#include "nirenberg/errors.hpp"
#include "nirenberg/geometry.hpp"

namespace nirenberg {

std::vector<std::string> FlowParams::check(int n, int bubbles) const {
  std::vector<std::string> out;
  if (!(M0 > 1.0 && M2 > 1.0 && M4 > 1.0)) out.push_back("M0, M2, M4 must exceed 1");
  if (!(eta > 0.0)) out.push_back("eta must be positive");
  if (!(psi_hi > psi_lo)) out.push_back("psi1 support is empty");
  if (M0 / (M4 * M4) > 0.01) out.push_back("M0/M4^2 > 0.01");
  if (bubbles >= 2) {
    const double k = bubbles - 1.0;
    const double a = M2 / std::pow(M0, 1.0 / k);
    const double b = std::pow(M2, (n - 1.0) / (n - 2.0)) / std::pow(M0, (0.5 + 1.0 / (n - 2.0)) / k);
    if (std::max(a, b) > 0.01) out.push_back("M2 too large relative to M0 for " + std::to_string(bubbles) + " bubbles");
  }
  return out;
}

double psi1(double t, double lo, double hi) {
  const double s = detail::ramp(t, lo, hi);
  return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

FlowLandscape FlowLandscape::from_records(const std::vector<CriticalPointRecord>& records) {
  FlowLandscape land;
  for (const auto& r : records) {
    if (r.kind == CriticalKind::BoundaryOfK1)
      land.boundary.push_back(r);
    else if (!r.on_equator)
      land.interior.push_back(r);
  }
  return land;
}

FlowLandscape FlowLandscape::compute(const ScalarField& K, const LandscapeOptions& opt) {
  return from_records(find_critical_points(K, opt));
}

double mu(const Configuration& cfg, const ScalarField& K, int i) {
  const auto& b = cfg.bubbles.at(i);
  const double l = b.lambda;
  if (!cfg.is_boundary(i)) return l * l;
  return 1.0 / (K.tangent_gradient(b.a).norm() / l + 1.0 / (l * l));
}

GammaQuantities gamma_quantities(const Configuration& cfg, const ScalarField& K, int i, const FlowParams& params) {
  const int n = cfg.dim();
  const auto& b = cfg.bubbles.at(i);
  const double l = b.lambda;
  const double M2 = params.M2;
  double sum_eps = 0.0;
  for (int j = 0; j < cfg.size(); ++j)
    if (j != i) sum_eps += epsilon(b, cfg.bubbles[j]);
  const double m = mu(cfg, K, i);

  GammaQuantities g;
  g.lambda = m * sum_eps / M2;
  if (cfg.is_boundary(i)) {
    const ModelState st = model_state(cfg, K, default_constants(n));
    g.alpha = std::abs(1.0 - st.beta[i]) / (M2 * (sum_eps + 1.0 / m));
    g.a = (K.boundary_gradient(b.a).norm() / l) / (M2 / (l * l) + sum_eps / (M2 * M2));
  } else {
    const double ld = l * b.boundary_distance();
    g.a = (K.tangent_gradient(b.a).norm() / l) / (M2 * (sum_eps + std::pow(ld, 2.0 - n) + 1.0 / (l * l)));
    g.H = sphere_H(b.a, b.a) / (M2 * std::pow(l, n - 4.0));
  }
  return g;
}

std::string to_string(Region r) {
  switch (r) {
    case Region::V1: return "V1";
    case Region::V2: return "V2";
    case Region::V3_1: return "V3_1";
    case Region::V3_2: return "V3_2";
    case Region::V3_3: return "V3_3";
    case Region::W: return "W";
    case Region::V4: return "V4";
    case Region::Mixed: return "mixed";
  }
  return "mixed";
}

double RegionLabel::weight(Region r) const {
  const auto it = weights.find(r);
  return it == weights.end() ? 0.0 : it->second;
}

namespace detail {

int sign_class(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

std::vector<int> assign_clusters(const Configuration& cfg, const FlowLandscape& land, double radius) {
  std::vector<int> out(cfg.size(), -1);
  for (int i = 0; i < cfg.size(); ++i) {
    const auto& pts = cfg.is_boundary(i) ? land.boundary : land.interior;
    double best = radius;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double d = geodesic_distance(cfg.bubbles[i].a, pts[k].location);
      if (d <= best) {
        best = d;
        out[i] = static_cast<int>(k);
      }
    }
  }
  return out;
}

std::vector<int> cluster_members(const Configuration& cfg, const std::vector<int>& cluster, int i) {
  std::vector<int> out;
  for (int j = 0; j < cfg.size(); ++j)
    if (cfg.is_boundary(j) == cfg.is_boundary(i) && cluster[j] == cluster[i]) out.push_back(j);
  return out;
}

Region v3_subregion(const Configuration& cfg, const FlowLandscape& land, const std::vector<int>& cluster,
                    const FlowParams& params) {
  for (int i = 0; i < cfg.size(); ++i)
    if (cluster[i] < 0)
      throw UnclassifiableState("bubble " + std::to_string(i) + " is not near a critical point in V3");
  bool v31 = false, v32 = false, v33 = false;
  for (int i = 0; i < cfg.size(); ++i) {
    const std::size_t count = cluster_members(cfg, cluster, i).size();
    if (cfg.is_boundary(i)) {
      const auto& z = land.boundary[cluster[i]];
      const int s = sign_class(z.normal_derivative, params.zero_tol);
      if (s == 0 && count >= 2) v31 = true;
      if (s < 0 || (s == 0 && z.laplacian > 0.0)) v32 = true;
      if (s > 0 && count >= 2) v33 = true;
    } else {
      const auto& y = land.interior[cluster[i]];
      if (y.laplacian > 0.0) v32 = true;
      if (count >= 2 && y.laplacian < 0.0)
        throw UnclassifiableState("two interior bubbles near the same critical point");
    }
  }
  if (v31) return Region::V3_1;
  if (v32) return Region::V3_2;
  if (v33) return Region::V3_3;
  return Region::W;
}

Configuration sub_configuration(const Configuration& cfg, const std::vector<int>& idx) {
  Configuration out;
  out.eps = cfg.eps;
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  for (int i : sorted) {
    if (cfg.is_boundary(i)) ++out.q; else ++out.p;
    out.alpha.push_back(cfg.alpha[i]);
    out.bubbles.push_back(cfg.bubbles[i]);
  }
  return out;
}

}  // namespace detail

RegionLabel classify_region(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land,
                            const FlowParams& params) {
  try {
    validate(cfg);
  } catch (const InvalidConfiguration& e) {
    throw OutsideNeighborhood(e.what());
  }
  const int N = cfg.size();
  RegionLabel lab;
  lab.mu.resize(N);
  lab.gamma.resize(N);
  for (int i = 0; i < N; ++i) {
    lab.mu[i] = mu(cfg, K, i);
    lab.gamma[i] = gamma_quantities(cfg, K, i, params);
  }
  lab.cluster = detail::assign_clusters(cfg, land, 2.0 * params.eta);

  const auto [mn, mx] = std::minmax_element(lab.mu.begin(), lab.mu.end());
  const double ratio = *mx / *mn;
  const double w4 = detail::ramp(ratio, params.M0, 2.0 * params.M0);

  double s1 = 0.0;
  for (int i = cfg.q; i < N; ++i) {
    const auto& g = lab.gamma[i];
    s1 = std::max(s1, detail::ramp(g.H + g.a + g.lambda, 6.0, 8.0));
  }
  double s2 = 0.0;
  for (int i = 0; i < cfg.q; ++i) {
    const auto& g = lab.gamma[i];
    double d = std::numeric_limits<double>::infinity();
    for (const auto& z : land.boundary) d = std::min(d, geodesic_distance(cfg.bubbles[i].a, z.location));
    s2 = std::max({s2, detail::ramp(g.alpha + g.lambda, 4.0, 6.0), detail::ramp(d, params.eta, 2.0 * params.eta)});
  }

  const double rest = 1.0 - w4;
  if (w4 > 0.0) lab.weights[Region::V4] = w4;
  if (rest * s1 > 0.0) lab.weights[Region::V1] = rest * s1;
  if (rest * (1.0 - s1) * s2 > 0.0) lab.weights[Region::V2] = rest * (1.0 - s1) * s2;
  const double w3 = rest * (1.0 - s1) * (1.0 - s2);
  if (w3 > 0.0) lab.weights[detail::v3_subregion(cfg, land, lab.cluster, params)] = w3;

  if (w4 > 0.0) {
    std::vector<int> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lab.mu[a] < lab.mu[b]; });
    const double step = std::pow(params.M0, 1.0 / (N - 1));
    lab.I.push_back(order[0]);
    for (int r = 1; r < N; ++r) {
      if (lab.mu[order[r]] > step * lab.mu[order[r - 1]]) break;
      lab.I.push_back(order[r]);
    }
    for (int r = 0; r < N; ++r) {
      const int i = order[r];
      const auto& g = lab.gamma[i];
      if (!cfg.is_boundary(i) && lab.i0 < 0 && g.H + g.a + g.lambda >= 6.0) lab.i0 = r;
      if (cfg.is_boundary(i) && lab.j0 < 0 && g.alpha + g.lambda >= 4.0) lab.j0 = r;
    }
  }

  lab.tag = lab.weights.size() == 1 ? lab.weights.begin()->first : Region::Mixed;
  return lab;
}

}  // namespace nirenberg
