#include "nirenberg/normal_form.hpp"

#include <cmath>
#include <limits>

#include "nirenberg/errors.hpp"

namespace nirenberg {

bool is_admissible_boundary(const CriticalPointRecord& r, int n) {
  if (r.classification == Classification::KB0Minus) return true;
  return r.classification == Classification::KBPlus && r.morse_index == n - 1;
}

WMatch match_w_set(const Configuration& cfg, const ClassifiedSets& sets, double eta) {
  const int n = cfg.dim();
  std::vector<CriticalPointRecord> bpts, ipts;
  for (const auto& r : sets.K_b_plus)
    if (is_admissible_boundary(r, n)) bpts.push_back(r);
  for (const auto& r : sets.K_b_0_minus) bpts.push_back(r);
  ipts = sets.K_in_minus;
  WMatch m;
  std::vector<bool> used_b(bpts.size(), false), used_i(ipts.size(), false);
  for (int i = 0; i < cfg.size(); ++i) {
    const bool bd = cfg.is_boundary(i);
    const auto& pts = bd ? bpts : ipts;
    auto& used = bd ? used_b : used_i;
    int best = -1;
    double bestd = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < pts.size(); ++k) {
      const double d = geodesic_distance(cfg.bubbles[i].a, pts[k].location);
      if (d < bestd) {
        bestd = d;
        best = static_cast<int>(k);
      }
    }
    if (best < 0 || bestd >= eta) throw NotInWSet("bubble " + std::to_string(i) + " is not within eta of an admissible point");
    if (used[best]) throw NotInWSet("two bubbles share the admissible point of bubble " + std::to_string(i));
    used[best] = true;
    m.index.push_back(best);
    m.points.push_back(pts[best]);
  }
  return m;
}

NormalFormTerms reduced_J_normal_form(const Configuration& cfg, const ScalarField& K, const ClassifiedSets& sets,
                                      double eta, const ModelOptions& opt) {
  validate(cfg);
  const WMatch match = match_w_set(cfg, sets, eta);
  const int n = cfg.dim();
  const int m = cfg.size();
  const ConstantsTable& ct = default_constants(n);
  const double S = ct.S_n.value;

  NormalFormTerms out;
  double L = 0.0;
  std::vector<double> Kz(m), astar(m), mass(m);
  for (int i = 0; i < m; ++i) {
    Kz[i] = match.points[i].value;
    L += cfg.weight(i) * std::pow(Kz[i], -(n - 2) / 2.0);
    astar[i] = std::pow(Kz[i], -(n - 2) / 4.0);
  }
  out.level = std::pow(S, 2.0 / n) * std::pow(L, 2.0 / n);
  double msum = 0.0;
  for (int i = 0; i < m; ++i) {
    mass[i] = cfg.weight(i) * astar[i] * astar[i];
    msum += mass[i];
  }
  for (auto& x : mass) x /= msum;

  double mean = 0.0;
  std::vector<double> dev(m);
  for (int i = 0; i < m; ++i) {
    dev[i] = std::log(cfg.alpha[i] / astar[i]);
    mean += mass[i] * dev[i];
  }
  double var = 0.0, cubic = 0.0;
  for (int i = 0; i < m; ++i) {
    var += mass[i] * (dev[i] - mean) * (dev[i] - mean);
    cubic += mass[i] * std::pow(std::abs(dev[i] - mean), 3);
  }
  out.alpha_sq = 4.0 / (n - 2) * var;

  double vcubic = 0.0;
  for (int i = 0; i < m; ++i) {
    const Vec& z = match.points[i].location;
    const bool bd = cfg.is_boundary(i);
    const Mat B = bd ? equator_tangent_basis(z) : sphere_tangent_basis(z);
    const Mat H = B.transpose() * (bd ? K.boundary_hessian(z) : K.tangent_hessian(z)) * B;
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const Vec v = es.eigenvectors().transpose() * (B.transpose() * sphere_log(z, cfg.bubbles[i].a));
    const double pre = (n - 2.0) / (2.0 * n) * mass[i] / Kz[i];
    for (int k = 0; k < v.size(); ++k) {
      const double h = es.eigenvalues()[k];
      if (h > 0.0)
        out.a_plus_sq += pre * h * v[k] * v[k];
      else
        out.a_minus_sq += pre * (-h) * v[k] * v[k];
    }
    vcubic += mass[i] / Kz[i] * std::pow(v.norm(), 3);
  }

  for (int i = 0; i < m; ++i) {
    const auto& b = cfg.bubbles[i];
    const double l = b.lambda;
    const double om = mass[i] / (cfg.weight(i) * S * Kz[i]);
    const double lap = K.laplace_beltrami(b.a);
    if (cfg.is_boundary(i))
      out.lambda_terms += om * (ct.c7.value * K.normal_derivative(b.a) / l - 2.0 * ct.c6.value * lap / (l * l));
    else
      out.lambda_terms -= 4.0 * ct.c6.value * om * lap / (l * l);
  }

  const double bracket = 1.0 - out.alpha_sq + out.a_minus_sq - out.a_plus_sq + out.lambda_terms;
  // Cubic deviations, cross terms of alpha and lambda deviations, and the dropped interactions.
  const Interval rj = reduced_J(cfg, K, ct, opt);
  double hw = 4.0 * cubic + 2.0 * K.derivative_scale() * vcubic + out.alpha_sq * std::abs(out.lambda_terms) * 4.0 +
              (out.alpha_sq + out.a_minus_sq + out.a_plus_sq) * (out.alpha_sq + out.a_minus_sq + out.a_plus_sq) * 4.0;
  const ModelState st = model_state(cfg, K, ct);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) hw += 2.0 * ct.c2.value * st.ahat[i] * st.ahat[j] * st.eps(i, j);
  for (int i = cfg.q; i < m; ++i)
    for (int j = cfg.q; j < m; ++j)
      hw += 2.0 * ct.c2.value * st.ahat[i] * st.ahat[j] * sphere_H(cfg.bubbles[i].a, cfg.bubbles[j].a) /
            std::pow(cfg.bubbles[i].lambda * cfg.bubbles[j].lambda, (n - 2) / 2.0);
  out.value = {out.level * bracket, opt.remainder_c * out.level * hw + rj.halfwidth};
  return out;
}

}  // namespace nirenberg
