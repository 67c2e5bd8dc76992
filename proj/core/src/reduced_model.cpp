#include "nirenberg/reduced_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nirenberg/errors.hpp"

namespace nirenberg {

namespace {

// Floor for floating-point rounding in the assembled sums, relative to the leading scale.
constexpr double kRound = 64.0 * std::numeric_limits<double>::epsilon();

double crit_exp(int n) { return 2.0 * n / (n - 2.0); }

double log_inv(double e) { return e > 0.0 ? std::log(1.0 / e) : 0.0; }

// Pair factor of the interaction term: boundary-boundary pairs see half the overlap.
double kappa(const Configuration& cfg, int i, int j) { return (cfg.is_boundary(i) && cfg.is_boundary(j)) ? 1.0 : 2.0; }

double third_order_coeff(const ConstantsTable& ct) {
  const double n = ct.n;
  const double ratio = radial_moment_closed(n + 2, n) / radial_moment_closed(n - 1, n);
  return 8.0 * (n - 2) / n * ct.S_n.value * ratio;
}

double height(const BubbleParam& b) { return b.a[b.a.size() - 1]; }

double lambda_d(const BubbleParam& b) { return b.lambda * b.boundary_distance(); }

double h_scaled(const Configuration& cfg, int i, int j) {
  const auto& bi = cfg.bubbles[i];
  const auto& bj = cfg.bubbles[j];
  return sphere_H(bi.a, bj.a) / std::pow(bi.lambda * bj.lambda, (cfg.dim() - 2) / 2.0);
}

// Ambient a_i-gradient of H(a_i, a_j) with a_j fixed; the diagonal moves both slots.
Vec h_gradient(const Configuration& cfg, int i, int j) {
  const int n = cfg.dim();
  const Vec& a = cfg.bubbles[i].a;
  if (i == j) {
    const double h = height(cfg.bubbles[i]);
    Vec g = Vec::Zero(n + 1);
    g[n] = (2.0 - n) * 2.0 * std::pow(2.0 * h, 1.0 - n);
    return g;
  }
  const Vec diff = a - mirror(cfg.bubbles[j].a);
  return (2.0 - n) * std::pow(diff.norm(), -n) * diff;
}

struct Magnitudes {
  std::vector<double> m;  // relative size of the dropped corrections of bubble i
  double total = 0.0;
};

Magnitudes correction_magnitudes(const Configuration& cfg, const ScalarField& K, const ModelState& st,
                                 const ConstantsTable& ct) {
  Magnitudes out;
  const double t3 = third_order_coeff(ct) * K.derivative_scale();
  for (int i = 0; i < cfg.size(); ++i) {
    const auto& b = cfg.bubbles[i];
    const double l = b.lambda;
    double v = st.omega[i] * (ct.c7.value * K.tangent_gradient(b.a).norm() / l +
                              4.0 * ct.c6.value * std::abs(K.laplace_beltrami(b.a)) / (l * l) + t3 / (l * l * l));
    out.m.push_back(v);
    out.total += v;
  }
  return out;
}

}  // namespace

void validate(const Configuration& cfg, bool check_alpha_balance, const ScalarField* K, const ModelOptions& opt) {
  if (cfg.q < 0 || cfg.p < 0 || cfg.size() < 1) throw InvalidConfiguration("need q, p >= 0 and q + p >= 1");
  if (static_cast<int>(cfg.alpha.size()) != cfg.size() || static_cast<int>(cfg.bubbles.size()) != cfg.size())
    throw InvalidConfiguration("alpha and bubble lists must have q + p entries");
  if (!(cfg.eps > 0.0)) throw InvalidConfiguration("eps must be positive");
  const int n = cfg.dim();
  for (int i = 0; i < cfg.size(); ++i) {
    const auto& b = cfg.bubbles[i];
    if (b.dim() != n) throw InvalidConfiguration("bubbles of different dimensions");
    if (!(cfg.alpha[i] > 0.0)) throw InvalidConfiguration("alpha must be positive");
    if (!(b.lambda > 1.0 / cfg.eps)) throw InvalidConfiguration("lambda must exceed 1/eps");
    const double ld = lambda_d(b);
    if (cfg.is_boundary(i)) {
      if (std::abs(height(b)) > 1e-12) throw InvalidConfiguration("boundary bubble is not centred on the equator");
    } else if (!(ld > 1.0 / cfg.eps)) {
      throw InvalidConfiguration("interior bubble has lambda*d <= 1/eps");
    }
  }
  for (int i = 0; i < cfg.size(); ++i)
    for (int j = i + 1; j < cfg.size(); ++j)
      if (!(epsilon(cfg.bubbles[i], cfg.bubbles[j]) < cfg.eps)) throw InvalidConfiguration("interaction eps_ij >= eps");
  if (check_alpha_balance) {
    if (!K) throw InvalidConfiguration("field required for the alpha balance check");
    if (alpha_imbalance(cfg, *K) > opt.alpha_slack) throw InvalidConfiguration("alpha balance outside slack");
  }
}

ModelState model_state(const Configuration& cfg, const ScalarField& K, const ConstantsTable& ct) {
  ModelState st;
  const int n = cfg.dim();
  const int m = cfg.size();
  st.n = n;
  const double S = ct.S_n.value;
  const double N = crit_exp(n);
  double A = 0.0, G = 0.0;
  st.K.resize(m);
  for (int i = 0; i < m; ++i) {
    st.K[i] = K.value(cfg.bubbles[i].a);
    if (!(st.K[i] > 0.0)) throw NonPositiveField("field is not positive at a bubble centre");
    A += cfg.weight(i) * cfg.alpha[i] * cfg.alpha[i];
    G += cfg.weight(i) * std::pow(cfg.alpha[i], N) * st.K[i];
  }
  st.norm0 = std::sqrt(S * A);
  st.J0 = std::pow(S, 2.0 / n) * A / std::pow(G, (n - 2.0) / n);
  st.Jpow = std::pow(st.J0, n / (n - 2.0));
  st.ahat.resize(m);
  st.omega.resize(m);
  st.beta.resize(m);
  for (int i = 0; i < m; ++i) {
    st.ahat[i] = cfg.alpha[i] / st.norm0;
    st.omega[i] = st.Jpow * std::pow(st.ahat[i], N);
    st.beta[i] = st.Jpow * std::pow(st.ahat[i], 4.0 / (n - 2)) * st.K[i];
  }
  st.eps = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) st.eps(i, j) = st.eps(j, i) = epsilon(cfg.bubbles[i], cfg.bubbles[j]);
  return st;
}

Interval reduced_J(const Configuration& cfg, const ScalarField& K, const ModelOptions& opt) {
  return reduced_J(cfg, K, default_constants(cfg.dim()), opt);
}

Interval reduced_J(const Configuration& cfg, const ScalarField& K, const ConstantsTable& ct, const ModelOptions& opt) {
  validate(cfg);
  const ModelState st = model_state(cfg, K, ct);
  const int n = st.n;
  const int m = cfg.size();
  const double c2 = ct.c2.value, c6 = ct.c6.value, c7 = ct.c7.value;

  double corr = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto& b = cfg.bubbles[i];
    const double l = b.lambda;
    const double lap = K.laplace_beltrami(b.a);
    if (cfg.is_boundary(i))
      corr += st.omega[i] * (c7 * K.normal_derivative(b.a) / l - 2.0 * c6 * lap / (l * l));
    else
      corr -= 4.0 * c6 * st.omega[i] * lap / (l * l);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) corr -= c2 * kappa(cfg, i, j) * st.ahat[i] * st.ahat[j] * st.eps(i, j);
  for (int i = cfg.q; i < m; ++i)
    for (int j = cfg.q; j < m; ++j) corr -= c2 * st.ahat[i] * st.ahat[j] * h_scaled(cfg, i, j);

  // Error bar: third-order Taylor terms, gradient-squared terms, interaction remainders, v-bar.
  const double t3 = third_order_coeff(ct) * K.derivative_scale();
  double hw = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto& b = cfg.bubbles[i];
    const double l = b.lambda;
    const double gk = K.tangent_gradient(b.a).norm();
    hw += st.omega[i] * (t3 / (l * l * l) + 4.0 * c6 * gk * gk / (l * l));
    if (!cfg.is_boundary(i)) hw += c2 * st.ahat[i] * st.ahat[i] * std::pow(lambda_d(b), -static_cast<double>(n));
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double e = st.eps(i, j);
      hw += 2.0 * c2 * st.ahat[i] * st.ahat[j] * std::pow(e, n / (n - 2.0)) * log_inv(e);
      if (geodesic_distance(cfg.bubbles[i].a, cfg.bubbles[j].a) < opt.sep_c) hw += c2 * st.ahat[i] * st.ahat[j] * e;
    }
  const double vb = vbar_budget(cfg, K, opt.vbar_c);
  hw += vb * vb + kRound;
  return {st.J0 * (1.0 + corr), opt.remainder_c * st.J0 * hw};
}

double remainder_R1b(const Configuration& cfg, const ScalarField& K) {
  const int n = cfg.dim();
  double r = 0.0;
  for (int k = 0; k < cfg.q; ++k) {
    const auto& b = cfg.bubbles[k];
    r += std::pow(K.tangent_gradient(b.a).norm() / b.lambda, n / 2.0) + std::pow(b.lambda, -2.0 * (n + 1) / 3.0);
    for (int j = 0; j < cfg.q; ++j) {
      if (j == k) continue;
      const double e = epsilon(b, cfg.bubbles[j]);
      r += std::pow(e, n / (n - 2.0)) * log_inv(e);
    }
  }
  return r;
}

double remainder_R1(const Configuration& cfg, const ScalarField& K) {
  const int n = cfg.dim();
  double r = 0.0;
  for (int k = 0; k < cfg.size(); ++k) {
    const auto& b = cfg.bubbles[k];
    r += std::pow(K.tangent_gradient(b.a).norm() / b.lambda, n / 2.0) + std::pow(b.lambda, -2.0 * (n + 1) / 3.0);
    for (int j = 0; j < cfg.size(); ++j) {
      if (j == k) continue;
      const double e = epsilon(b, cfg.bubbles[j]);
      r += std::pow(e, n / (n - 2.0)) * log_inv(e);
    }
  }
  for (int j = cfg.q; j < cfg.size(); ++j) r += std::pow(lambda_d(cfg.bubbles[j]), -static_cast<double>(n));
  return r;
}

Interval grad_alpha(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt) {
  validate(cfg);
  if (i < 0 || i >= cfg.size()) throw InvalidConfiguration("bubble index out of range");
  const ConstantsTable& ct = default_constants(cfg.dim());
  const ModelState st = model_state(cfg, K, ct);
  const double S = ct.S_n.value, c2 = ct.c2.value;
  const int n = st.n;
  const double U = st.J0 / st.norm0;
  const double w = cfg.weight(i);
  const double value = U * 2.0 * w * st.ahat[i] * S * (1.0 - st.beta[i]);

  const Magnitudes mg = correction_magnitudes(cfg, K, st, ct);
  const double N = crit_exp(n);
  double hw = (N + 2.0) / st.ahat[i] * (mg.m[i] + w * S * st.K[i] * st.omega[i] * mg.total);
  for (int j = 0; j < cfg.size(); ++j)
    if (j != i) hw += 2.0 * c2 * kappa(cfg, i, j) * st.ahat[j] * st.eps(i, j);
  if (!cfg.is_boundary(i)) {
    for (int j = cfg.q; j < cfg.size(); ++j) hw += 4.0 * c2 * st.ahat[j] * h_scaled(cfg, i, j);
    hw += c2 * st.ahat[i] * std::pow(lambda_d(cfg.bubbles[i]), 2.0 - n);
  }
  const double vb = vbar_budget(cfg, K, opt.vbar_c);
  hw += 2.0 * w * S * st.ahat[i] * vb * vb + kRound;
  return {value, opt.remainder_c * U * hw};
}

namespace {

Interval grad_lambda_impl(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt) {
  const ConstantsTable& ct = default_constants(cfg.dim());
  const ModelState st = model_state(cfg, K, ct);
  const int n = st.n;
  const double c2 = ct.c2.value;
  const double U = st.J0 / st.norm0;
  const auto& bi = cfg.bubbles[i];
  const double l = bi.lambda;
  const double lap = K.laplace_beltrami(bi.a);
  const double wp = st.Jpow * std::pow(st.ahat[i], (n + 2.0) / (n - 2.0));
  double inner = 0.0;
  for (int j = 0; j < cfg.size(); ++j) {
    if (j == i) continue;
    const double de = epsilon_dlambda(bi, cfg.bubbles[j]).di;
    inner -= 0.5 * c2 * kappa(cfg, i, j) * st.ahat[j] * de;
  }
  double hw_rel = 0.0;  // relative size in units of J0 before division by ahat_i
  const double t3 = third_order_coeff(ct) * K.derivative_scale();
  hw_rel += 3.0 * st.omega[i] * t3 / (l * l * l);
  if (cfg.is_boundary(i)) {
    inner += 2.0 * wp * (-ct.c3.value * K.normal_derivative(bi.a) / l + ct.c9.value * lap / (l * l));
    hw_rel += ct.S_n.value * st.omega[i] * remainder_R1b(cfg, K);
  } else {
    for (int j = cfg.q; j < cfg.size(); ++j) inner += c2 * 0.5 * (n - 2) * st.ahat[j] * h_scaled(cfg, i, j);
    inner += 4.0 * ct.c6.value * wp * lap / (l * l);
    hw_rel += ct.S_n.value * st.omega[i] * remainder_R1(cfg, K);
  }
  for (int j = 0; j < cfg.size(); ++j) {
    if (j == i) continue;
    const double e = st.eps(i, j);
    hw_rel += 2.0 * c2 * st.ahat[i] * st.ahat[j] * std::pow(e, n / (n - 2.0)) * log_inv(e);
  }
  return {U * 2.0 * inner, opt.remainder_c * U * (hw_rel / st.ahat[i] + kRound)};
}

}  // namespace

Interval grad_lambda_boundary(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt) {
  validate(cfg);
  if (i < 0 || i >= cfg.q) throw IndexNotBoundary("index " + std::to_string(i) + " is not a boundary bubble");
  return grad_lambda_impl(cfg, K, i, opt);
}

Interval grad_lambda_interior(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt) {
  validate(cfg);
  if (i < cfg.q || i >= cfg.size()) throw IndexNotInterior("index " + std::to_string(i) + " is not an interior bubble");
  return grad_lambda_impl(cfg, K, i, opt);
}

Interval grad_lambda(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt) {
  return cfg.is_boundary(i) ? grad_lambda_boundary(cfg, K, i, opt) : grad_lambda_interior(cfg, K, i, opt);
}

Vec admissible_tangent(const Configuration& cfg, int i, const Vec& v) {
  const Vec& a = cfg.bubbles[i].a;
  if (cfg.is_boundary(i)) return boundary_tangent_projector(a) * v;
  return tangent_projector(a) * v;
}

Configuration move_point(const Configuration& cfg, int i, const Vec& v) {
  Configuration out = cfg;
  const Vec t = admissible_tangent(cfg, i, v);
  Vec a = sphere_exp(cfg.bubbles[i].a, t);
  if (cfg.is_boundary(i)) a[a.size() - 1] = 0.0;
  out.bubbles[i].a = SpherePoint::normalized(a).coords();
  return out;
}

TangentGradient grad_a(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt) {
  validate(cfg);
  if (i < 0 || i >= cfg.size()) throw InvalidConfiguration("bubble index out of range");
  const ConstantsTable& ct = default_constants(cfg.dim());
  const ModelState st = model_state(cfg, K, ct);
  const int n = st.n;
  const double c2 = ct.c2.value, S = ct.S_n.value;
  const double U = st.J0 / st.norm0;
  const auto& bi = cfg.bubbles[i];
  const double l = bi.lambda;
  const double apow = std::pow(st.ahat[i], (n + 2.0) / (n - 2.0));
  const double lead = (n - 2.0) / n * S * std::pow(st.J0, 2.0 * (n - 1) / (n - 2.0)) * apow / l;

  TangentGradient out;
  Vec v = Vec::Zero(n + 1);
  if (cfg.is_boundary(i)) {
    v -= lead * K.boundary_gradient(bi.a);  // 2n c5 = (n-2) S_n / n
  } else {
    v -= 2.0 * lead * K.tangent_gradient(bi.a);
  }
  for (int j = 0; j < cfg.size(); ++j) {
    if (j == i) continue;
    const double bracket = -1.0 + st.beta[i] + st.beta[j];
    v -= st.J0 * c2 * kappa(cfg, i, j) * st.ahat[j] / l * bracket * epsilon_da(bi, cfg.bubbles[j]);
  }
  if (!cfg.is_boundary(i)) {
    for (int j = cfg.q; j < cfg.size(); ++j) {
      const double scale = std::pow(bi.lambda * cfg.bubbles[j].lambda, -(n - 2) / 2.0);
      const double mult = (j == i) ? 1.0 : 2.0;
      v -= st.J0 * c2 * mult * st.ahat[j] * scale / l * h_gradient(cfg, i, j);
    }
  }
  out.value = admissible_tangent(cfg, i, v) / st.norm0;

  if (cfg.is_boundary(i)) {
    const double nu = K.normal_derivative(bi.a);
    out.normal = Vec::Unit(n + 1, n) *
                 (2.0 * U * st.ahat[i] * (ct.c4.value * (1.0 - st.beta[i]) + st.beta[i] * ct.c5.value / l * nu));
  } else {
    out.normal = Vec::Zero(n + 1);
  }

  // Derivatives of the correction terms the display leaves out.
  const Magnitudes mg = correction_magnitudes(cfg, K, st, ct);
  const double gk = K.tangent_gradient(bi.a).norm();
  const double t3 = third_order_coeff(ct) * K.derivative_scale();
  double g = st.omega[i] * (ct.c7.value * K.normal_derivative_gradient(bi.a).norm() / l +
                            4.0 * ct.c6.value * K.laplacian_gradient(bi.a).norm() / (l * l) + t3 / (l * l));
  g += 2.0 * cfg.weight(i) * S * st.omega[i] * gk * (mg.total + 1.0 / (l * l));
  for (int j = 0; j < cfg.size(); ++j) {
    if (j == i) continue;
    const double e = st.eps(i, j);
    g += 2.0 * c2 * st.ahat[i] * st.ahat[j] * std::abs(st.beta[i] + st.beta[j] - 2.0) *
         epsilon_da(bi, cfg.bubbles[j]).norm();
    g += 2.0 * c2 * st.ahat[i] * st.ahat[j] * std::pow(e, (n + 1.0) / (n - 2.0)) * l;
  }
  if (!cfg.is_boundary(i)) g += c2 * st.ahat[i] * st.ahat[i] * l * std::pow(lambda_d(bi), 1.0 - n);
  out.halfwidth = opt.remainder_c * U * (g / (st.ahat[i] * l) + kRound);
  return out;
}

GradientComponents gradient_components(const Configuration& cfg, const ScalarField& K, const ModelOptions& opt) {
  GradientComponents gc;
  for (int i = 0; i < cfg.size(); ++i) {
    gc.alpha.push_back(grad_alpha(cfg, K, i, opt));
    gc.lambda.push_back(grad_lambda(cfg, K, i, opt));
    gc.a.push_back(grad_a(cfg, K, i, opt));
  }
  gc.eps = model_state(cfg, K, default_constants(cfg.dim())).eps;
  gc.R1 = remainder_R1(cfg, K);
  gc.R1b = remainder_R1b(cfg, K);
  return gc;
}

Configuration normalize_alphas(const Configuration& cfg, const ScalarField& K) {
  const int n = cfg.dim();
  const double S = default_constants(n).S_n.value;
  double L = 0.0;
  std::vector<double> Ks(cfg.size());
  for (int i = 0; i < cfg.size(); ++i) {
    Ks[i] = K.value(cfg.bubbles[i].a);
    if (!(Ks[i] > 0.0)) throw NonPositiveField("field is not positive at a bubble centre");
    L += cfg.weight(i) * std::pow(Ks[i], -(n - 2) / 2.0);
  }
  Configuration out = cfg;
  for (int i = 0; i < cfg.size(); ++i) out.alpha[i] = std::pow(Ks[i], -(n - 2) / 4.0) / std::sqrt(S * L);
  return out;
}

double alpha_imbalance(const Configuration& cfg, const ScalarField& K) {
  const ModelState st = model_state(cfg, K, default_constants(cfg.dim()));
  double worst = 0.0;
  for (double b : st.beta) worst = std::max(worst, std::abs(1.0 - b));
  return worst;
}

double vbar_budget(const Configuration& cfg, const ScalarField& K, double c) {
  const int n = cfg.dim();
  double s = 0.0;
  for (int i = 0; i < cfg.size(); ++i) {
    const auto& b = cfg.bubbles[i];
    s += K.tangent_gradient(b.a).norm() / b.lambda + 1.0 / (b.lambda * b.lambda);
  }
  for (int i = 0; i < cfg.size(); ++i)
    for (int j = i + 1; j < cfg.size(); ++j) {
      const double e = epsilon(cfg.bubbles[i], cfg.bubbles[j]);
      if (n == 5)
        s += e * std::pow(log_inv(e), 3.0 / 5.0);
      else
        s += std::pow(e, (n + 2.0) / (2.0 * (n - 2))) * std::pow(log_inv(e), (n + 2.0) / (2.0 * n));
    }
  for (int i = cfg.q; i < cfg.size(); ++i) {
    const double ld = lambda_d(cfg.bubbles[i]);
    if (n == 5)
      s += std::pow(ld, -3.0);
    else
      s += std::log(ld) / std::pow(ld, (n + 2) / 2.0);
  }
  return c * s;
}

}  // namespace nirenberg
