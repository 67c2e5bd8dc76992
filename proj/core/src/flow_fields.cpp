#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "flow_internal.hpp"
#include "nirenberg/errors.hpp"
#include "nirenberg/geometry.hpp"

namespace nirenberg {

BubbleField BubbleField::zero(const Configuration& cfg) {
  BubbleField f;
  f.alpha.assign(cfg.size(), 0.0);
  f.lambda.assign(cfg.size(), 0.0);
  f.a.assign(cfg.size(), Vec::Zero(cfg.dim() + 1));
  return f;
}

void BubbleField::add(const BubbleField& o, double w) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    alpha[i] += w * o.alpha[i];
    lambda[i] += w * o.lambda[i];
    a[i] += w * o.a[i];
  }
}

double Velocity::norm() const {
  double s = 0.0;
  for (double x : alpha_dot) s += x * x;
  for (double x : lambda_dot) s += x * x;
  for (const auto& v : a_dot) s += v.squaredNorm();
  return std::sqrt(s);
}

Velocity to_velocity(const Configuration& cfg, const BubbleField& f) {
  Velocity v;
  for (int i = 0; i < cfg.size(); ++i) {
    const double l = cfg.bubbles[i].lambda;
    v.alpha_dot.push_back(f.alpha[i] * cfg.alpha[i]);
    v.lambda_dot.push_back(f.lambda[i] * l);
    v.a_dot.push_back(admissible_tangent(cfg, i, f.a[i]) / l);
  }
  return v;
}

namespace {

struct Ctx {
  const Configuration& cfg;
  const ScalarField& K;
  const FlowLandscape& land;
  const FlowParams& P;
  const RegionLabel& lab;
  double psi(double t) const { return psi1(t, P.psi_lo, P.psi_hi); }
};

Vec unit_or_zero(const Vec& v) {
  const double n = v.norm();
  return n > 0.0 ? Vec(v / n) : Vec(Vec::Zero(v.size()));
}

Vec boundary_drift(const Ctx& c, int i) { return unit_or_zero(c.K.boundary_gradient(c.cfg.bubbles[i].a)); }

BubbleField W_alpha(const Ctx& c) {
  BubbleField f = BubbleField::zero(c.cfg);
  const ModelState st = model_state(c.cfg, c.K, default_constants(c.cfg.dim()));
  for (int k = 0; k < c.cfg.q; ++k) {
    const double s = 1.0 - st.beta[k];
    if (s != 0.0) f.alpha[k] = -c.psi(c.lab.gamma[k].alpha) * (s > 0.0 ? 1.0 : -1.0);
  }
  return f;
}

BubbleField W_lambda_in(const Ctx& c) {
  BubbleField f = BubbleField::zero(c.cfg);
  for (int i = c.cfg.q; i < c.cfg.size(); ++i)
    f.lambda[i] = -(c.psi(c.lab.gamma[i].lambda) + c.psi(c.lab.gamma[i].H));
  return f;
}

BubbleField W_a_in(const Ctx& c) {
  BubbleField f = BubbleField::zero(c.cfg);
  for (int i = c.cfg.q; i < c.cfg.size(); ++i)
    f.a[i] = c.psi(c.lab.gamma[i].a) * unit_or_zero(c.K.tangent_gradient(c.cfg.bubbles[i].a));
  return f;
}

BubbleField W_lambda_b(const Ctx& c) {
  BubbleField f = BubbleField::zero(c.cfg);
  for (int i = 0; i < c.cfg.q; ++i) f.lambda[i] = -c.psi(c.lab.gamma[i].lambda);
  return f;
}

BubbleField field_V1(const Ctx& c) {
  BubbleField f = W_lambda_in(c);
  f.add(W_a_in(c), 1.0);
  f.add(W_alpha(c), 1.0);
  f.add(W_lambda_b(c), 1.0 / c.P.M2);
  return f;
}

BubbleField field_V2(const Ctx& c) {
  BubbleField f = W_alpha(c);
  f.add(W_lambda_b(c), 1.0);
  for (int i = 0; i < c.cfg.q; ++i) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& z : c.land.boundary) d = std::min(d, geodesic_distance(c.cfg.bubbles[i].a, z.location));
    if (d >= c.P.eta) f.a[i] += boundary_drift(c, i);
  }
  return f;
}

double sum_eps(const Configuration& cfg, int i) {
  double s = 0.0;
  for (int j = 0; j < cfg.size(); ++j)
    if (j != i) s += epsilon(cfg.bubbles[i], cfg.bubbles[j]);
  return s;
}

BubbleField field_V3_1(const Ctx& c) {
  BubbleField f = BubbleField::zero(c.cfg);
  const double M2 = c.P.M2;
  for (int k = 0; k < c.cfg.q; ++k) {
    const auto& b = c.cfg.bubbles[k];
    const double l = b.lambda;
    if (c.K.boundary_gradient(b.a).norm() / l >= M2 / (l * l) + sum_eps(c.cfg, k) / (M2 * M2))
      f.a[k] = boundary_drift(c, k);
  }
  return f;
}

BubbleField field_V3_2(const Ctx& c) {
  BubbleField f = BubbleField::zero(c.cfg);
  std::vector<int> D12, D3;
  for (int i = 0; i < c.cfg.size(); ++i) {
    if (c.cfg.is_boundary(i)) {
      const auto& z = c.land.boundary[c.lab.cluster[i]];
      const int s = detail::sign_class(z.normal_derivative, c.P.zero_tol);
      if (s < 0) D12.push_back(i);
      if (s == 0 && z.laplacian > 0.0) D3.push_back(i);
    } else if (c.land.interior[c.lab.cluster[i]].laplacian > 0.0) {
      D12.push_back(i);
    }
  }
  if (!D12.empty()) {
    for (int i : D12) f.lambda[i] = -1.0;
    return f;
  }
  for (int i : D3) {
    const auto& b = c.cfg.bubbles[i];
    f.a[i] = c.psi(b.lambda * c.K.boundary_gradient(b.a).norm() / c.P.M_gate) * boundary_drift(c, i);
    f.lambda[i] = -1.0;
  }
  return f;
}

// Moves the closest group of a boundary cluster towards its barycentre.
BubbleField barycentric_field(const Configuration& cfg, const std::vector<int>& B, const FlowParams& P) {
  BubbleField f = BubbleField::zero(cfg);
  if (B.size() < 2) return f;
  auto d = [&](int x, int y) { return geodesic_distance(cfg.bubbles[x].a, cfg.bubbles[y].a); };
  int i = B[0], i1 = B[1];
  double best = d(i, i1);
  for (std::size_t s = 0; s < B.size(); ++s)
    for (std::size_t t = s + 1; t < B.size(); ++t)
      if (d(B[s], B[t]) < best) {
        best = d(B[s], B[t]);
        i = B[s];
        i1 = B[t];
      }
  std::vector<int> L = {i, i1};
  double thr = P.M4 * best;
  for (;;) {
    std::vector<int> next;
    for (int j : B)
      for (int l : L)
        if (d(j, l) <= thr) {
          next.push_back(j);
          break;
        }
    std::sort(next.begin(), next.end());
    std::vector<int> cur = L;
    std::sort(cur.begin(), cur.end());
    if (next == cur) break;
    L = next;
    double diam = 0.0;
    for (int r : L)
      for (int t : L) diam = std::max(diam, d(r, t));
    thr = P.M4 * diam;
  }
  Vec b = Vec::Zero(cfg.dim() + 1);
  for (int j : L) b += cfg.bubbles[j].a;
  b[b.size() - 1] = 0.0;
  const Vec abar = b / b.norm();
  double gamma = 0.0;
  for (int j : L) gamma = std::max(gamma, d(i, j));
  const double li = cfg.bubbles[i].lambda;
  for (int j : L) {
    const Vec& aj = cfg.bubbles[j].a;
    f.a[j] = cfg.bubbles[j].lambda * (abar - aj.dot(abar) * aj) / (li * gamma);
  }
  return f;
}

std::vector<std::vector<int>> positive_clusters(const Ctx& c) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(c.land.boundary.size(), false);
  for (int i = 0; i < c.cfg.q; ++i) {
    const int z = c.lab.cluster[i];
    if (z < 0 || seen[z]) continue;
    seen[z] = true;
    if (detail::sign_class(c.land.boundary[z].normal_derivative, c.P.zero_tol) <= 0) continue;
    auto members = detail::cluster_members(c.cfg, c.lab.cluster, i);
    if (members.size() >= 2) out.push_back(members);
  }
  return out;
}

BubbleField field_V3_3(const Ctx& c) {
  BubbleField f = BubbleField::zero(c.cfg);
  for (const auto& B : positive_clusters(c)) f.add(barycentric_field(c.cfg, B, c.P), 1.0);
  return f;
}

BubbleField field_W(const Ctx& c) {
  BubbleField f = W_alpha(c);
  f.add(W_a_in(c), 1.0);
  for (int i = 0; i < c.cfg.size(); ++i) {
    const auto& b = c.cfg.bubbles[i];
    if (c.cfg.is_boundary(i))
      f.a[i] += c.psi(b.lambda * c.K.boundary_gradient(b.a).norm() / c.P.M2) * boundary_drift(c, i);
    f.lambda[i] += 1.0;
  }
  return f;
}

BubbleField assemble(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land, const FlowParams& P,
                     const RegionLabel& lab);

// Embeds a field of a sub-configuration (sorted original indices idx) into the full one.
void embed(BubbleField& f, const BubbleField& sub, const std::vector<int>& idx, double w) {
  for (std::size_t s = 0; s < idx.size(); ++s) {
    const int i = idx[s];
    f.alpha[i] += w * sub.alpha[s];
    f.lambda[i] += w * sub.lambda[s];
    f.a[i] += w * sub.a[s];
  }
}

BubbleField field_V4(const Ctx& c) {
  const Configuration& cfg = c.cfg;
  const int N = cfg.size();
  const double M2 = c.P.M2;
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return c.lab.mu[a] < c.lab.mu[b]; });

  BubbleField f = W_alpha(c);
  f.add(W_a_in(c), 1.0);
  for (int r = 0; r < N; ++r) {
    const int i = order[r];
    const double w = std::ldexp(1.0, r + 1);
    if (!cfg.is_boundary(i) && c.lab.i0 >= 0 && r >= c.lab.i0) f.lambda[i] -= w;
    if (cfg.is_boundary(i) && c.lab.j0 >= 0 && r >= c.lab.j0) f.lambda[i] -= w / M2;
  }
  const int k0 = static_cast<int>(c.lab.I.size()) - 1;
  const bool covered = (c.lab.i0 >= 0 && c.lab.i0 <= k0) || (c.lab.j0 >= 0 && c.lab.j0 <= k0);
  if (covered) return f;

  std::vector<int> idx = c.lab.I;
  std::sort(idx.begin(), idx.end());
  const Configuration u1 = detail::sub_configuration(cfg, idx);
  FlowParams P1 = c.P;
  P1.M0 = N > 1 ? std::pow(c.P.M0, static_cast<double>(k0) / (N - 1)) : c.P.M0;
  const RegionLabel lab1 = classify_region(u1, c.K, c.land, P1);
  const double w = 1.0 / (M2 * M2);
  if (lab1.tag != Region::V3_3) {
    embed(f, assemble(u1, c.K, c.land, P1, lab1), idx, w);
    return f;
  }
  std::vector<int> D;
  for (int s = 0; s < u1.size(); ++s) {
    if (!u1.is_boundary(s) || detail::cluster_members(u1, lab1.cluster, s).size() == 1) D.push_back(s);
  }
  if (D.empty()) {
    for (int s = 0; s < u1.size(); ++s) {
      double e = 0.0;
      for (int k = 0; k < u1.size(); ++k)
        if (k != s) e += epsilon(u1.bubbles[s], u1.bubbles[k]);
      if (e <= c.P.m1 * cfg.q / u1.bubbles[s].lambda) D.push_back(s);
    }
  }
  BubbleField sub = BubbleField::zero(u1);
  if (!D.empty()) {
    for (int s : D) sub.lambda[s] = 1.0;
  } else {
    const Ctx c1{u1, c.K, c.land, P1, lab1};
    sub = field_V3_3(c1);
  }
  embed(f, sub, idx, w);
  return f;
}

// Field for one interior bubble: drift along grad K where it is large, otherwise move lambda by the sign of -Delta K.
BubbleField single_interior_field(const Ctx& c) {
  BubbleField f = BubbleField::zero(c.cfg);
  const auto& b = c.cfg.bubbles[0];
  const Vec g = c.K.tangent_gradient(b.a);
  const double s = c.psi(b.lambda * g.norm() / c.P.M_gate);
  const double lap = c.K.laplace_beltrami(b.a);
  f.a[0] = s * unit_or_zero(g);
  f.lambda[0] = -s + (1.0 - s) * (lap < 0.0 ? 1.0 : (lap > 0.0 ? -1.0 : 0.0));
  return f;
}

BubbleField region_field(const Ctx& c, Region r) {
  switch (r) {
    case Region::V1: return field_V1(c);
    case Region::V2: return field_V2(c);
    case Region::V3_1: return field_V3_1(c);
    case Region::V3_2: return field_V3_2(c);
    case Region::V3_3: return field_V3_3(c);
    case Region::W: return field_W(c);
    case Region::V4: return field_V4(c);
    case Region::Mixed: break;
  }
  throw UnclassifiableState("no field for a mixed tag");
}

BubbleField assemble(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land, const FlowParams& P,
                     const RegionLabel& lab) {
  if (lab.weights.empty()) throw UnclassifiableState("state belongs to no region");
  double total = 0.0;
  for (const auto& [r, w] : lab.weights) total += w;
  if (std::abs(total - 1.0) > 1e-9) throw UnclassifiableState("region weights do not sum to one");
  const Ctx c{cfg, K, land, P, lab};
  BubbleField f = BubbleField::zero(cfg);
  for (const auto& [r, w] : lab.weights) f.add(region_field(c, r), w);
  return f;
}

}  // namespace

BubbleField pseudogradient_field(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land,
                                 const FlowParams& params, RegionLabel* label) {
  if (cfg.q == 0 && cfg.p == 1) {
    // The single-bubble field needs no region; the label is diagnostic only.
    RegionLabel lab;
    try {
      lab = classify_region(cfg, K, land, params);
    } catch (const UnclassifiableState&) {
      lab.mu = {mu(cfg, K, 0)};
      lab.gamma = {gamma_quantities(cfg, K, 0, params)};
      lab.cluster = detail::assign_clusters(cfg, land, 2.0 * params.eta);
    }
    if (label) *label = lab;
    return single_interior_field(Ctx{cfg, K, land, params, lab});
  }
  const RegionLabel lab = classify_region(cfg, K, land, params);
  if (label) *label = lab;
  return assemble(cfg, K, land, params, lab);
}

Velocity pseudogradient(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land,
                        const FlowParams& params) {
  return to_velocity(cfg, pseudogradient_field(cfg, K, land, params));
}

}  // namespace nirenberg
