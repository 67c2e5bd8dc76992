#include "nirenberg/field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "nirenberg/errors.hpp"

namespace nirenberg {

Monomial Monomial::parse(const std::string& text, int ambient_dim) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  Monomial m;
  if (s.empty() || s == "1") return m;
  std::stringstream ss(s);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    int power = 1;
    auto caret = factor.find('^');
    if (caret != std::string::npos) {
      try {
        power = std::stoi(factor.substr(caret + 1));
      } catch (...) {
        throw ConfigError("bad exponent in monomial '" + text + "'");
      }
      factor = factor.substr(0, caret);
    }
    if (factor.size() < 2 || factor[0] != 'x') throw ConfigError("bad factor in monomial '" + text + "'");
    int idx = 0;
    try {
      size_t used = 0;
      idx = std::stoi(factor.substr(1), &used);
      if (used != factor.size() - 1) throw ConfigError("bad variable index");
    } catch (const ConfigError&) {
      throw;
    } catch (...) {
      throw ConfigError("bad variable in monomial '" + text + "'");
    }
    if (idx < 1 || idx > ambient_dim) throw ConfigError("variable out of range in monomial '" + text + "'");
    if (power < 0) throw ConfigError("negative exponent in monomial '" + text + "'");
    for (int k = 0; k < power; ++k) m.vars.push_back(idx - 1);
  }
  if (m.vars.size() > 2) throw ConfigError("monomial degree exceeds 2: '" + text + "'");
  std::sort(m.vars.begin(), m.vars.end());
  return m;
}

std::string Monomial::str() const {
  if (vars.empty()) return "1";
  if (vars.size() == 2 && vars[0] == vars[1]) return "x" + std::to_string(vars[0] + 1) + "^2";
  std::string s;
  for (size_t k = 0; k < vars.size(); ++k) {
    if (k) s += "*";
    s += "x" + std::to_string(vars[k] + 1);
  }
  return s;
}

ScalarField::ScalarField(int n, double kappa0, std::vector<FieldTerm> terms)
    : n_(n), kappa_(kappa0), terms_(std::move(terms)), g_(Vec::Zero(n + 1)), Q_(Mat::Zero(n + 1, n + 1)) {
  if (n < 5) throw ConfigError("dimension must be at least 5");
  if (!(kappa0 > 0.0) || !std::isfinite(kappa0)) throw ConfigError("kappa0 must be positive");
  double c0 = kappa0;
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coeff)) throw ConfigError("non-finite coefficient");
    const auto& v = t.monomial.vars;
    for (int k : v)
      if (k < 0 || k > n) throw ConfigError("monomial variable out of range");
    if (v.empty()) {
      c0 += t.coeff;
    } else if (v.size() == 1) {
      g_[v[0]] += t.coeff;
    } else if (v[0] == v[1]) {
      Q_(v[0], v[0]) += t.coeff;
    } else {
      Q_(v[0], v[1]) += 0.5 * t.coeff;
      Q_(v[1], v[0]) += 0.5 * t.coeff;
    }
  }
  kappa_ = c0;
  if (conservative_lower_bound() <= 0.0) {
    // Not conclusive; the grid check in field_min_max decides.
  }
}

double ScalarField::conservative_lower_bound() const {
  double b = kappa_;
  for (const auto& t : terms_) {
    const auto& v = t.monomial.vars;
    if (v.empty()) continue;
    double mx = (v.size() == 2 && v[0] != v[1]) ? 0.5 : 1.0;
    b -= std::abs(t.coeff) * mx;
  }
  return b;
}

double ScalarField::value(const Vec& p) const { return kappa_ + g_.dot(p) + p.dot(Q_ * p); }

Vec ScalarField::ambient_gradient(const Vec& p) const { return g_ + 2.0 * Q_ * p; }

Vec ScalarField::tangent_gradient(const Vec& p) const {
  Vec G = ambient_gradient(p);
  return G - G.dot(p) * p;
}

Mat ScalarField::tangent_hessian(const Vec& p) const {
  Mat P = tangent_projector(p);
  return P * (2.0 * Q_) * P - ambient_gradient(p).dot(p) * P;
}

double ScalarField::laplace_beltrami(const Vec& p) const {
  double qpp = p.dot(Q_ * p);
  return 2.0 * Q_.trace() - 2.0 * qpp - n_ * (g_.dot(p) + 2.0 * qpp);
}

double ScalarField::normal_derivative(const Vec& z) const { return -ambient_gradient(z)[n_]; }

Vec ScalarField::laplacian_gradient(const Vec& p) const {
  Vec G = -(4.0 + 4.0 * n_) * (Q_ * p) - n_ * g_;
  return G - G.dot(p) * p;
}

Vec ScalarField::normal_derivative_gradient(const Vec& z) const {
  Vec G = -2.0 * Q_.row(n_).transpose();
  return G - G.dot(z) * z;
}

double ScalarField::derivative_scale() const { return g_.norm() + 2.0 * Q_.norm(); }

Vec ScalarField::boundary_gradient(const Vec& z) const {
  Vec G = ambient_gradient(z);
  G[n_] = 0.0;
  Vec zz = z;
  zz[n_] = 0.0;
  return G - G.dot(zz) * zz;
}

Mat ScalarField::boundary_hessian(const Vec& z) const {
  Vec zz = z;
  zz[n_] = 0.0;
  Mat P = boundary_tangent_projector(zz);
  return P * (2.0 * Q_) * P - ambient_gradient(zz).dot(zz) * P;
}

ScalarField ScalarField::scaled(double t) const {
  std::vector<FieldTerm> terms = terms_;
  for (auto& term : terms) term.coeff *= t;
  double k0 = kappa_;
  for (const auto& term : terms_)
    if (term.monomial.vars.empty()) k0 -= term.coeff;
  return ScalarField(n_, t * k0, terms);
}

Mat restrict_to_basis(const Mat& H, const Mat& B) { return B.transpose() * H * B; }

Mat sphere_tangent_basis(const Vec& p) { return complement_basis(p); }

Mat equator_tangent_basis(const Vec& z) {
  const auto m = z.size();
  Mat span(m, 2);
  Vec zz = z;
  zz[m - 1] = 0.0;
  span.col(0) = zz.normalized();
  span.col(1) = Vec::Unit(m, m - 1);
  return complement_basis(span);
}

namespace {

Vec clamp_to_hemisphere(Vec x) {
  const auto m = x.size();
  if (x[m - 1] < 0.0) x[m - 1] = 0.0;
  return x / x.norm();
}

// Projected gradient ascent of sign*K on the closed hemisphere.
Vec refine_extremum(const ScalarField& K, Vec x, double sign) {
  const auto m = x.size();
  double t = 0.1;
  double f = sign * K.value(x);
  for (int it = 0; it < 20000; ++it) {
    Vec G = sign * K.tangent_gradient(x);
    if (x[m - 1] <= 1e-15 && G[m - 1] < 0.0) {
      x[m - 1] = 0.0;
      G = sign * K.boundary_gradient(x);
    }
    if (G.norm() < 1e-14) break;
    bool moved = false;
    while (t > 1e-18) {
      Vec y = clamp_to_hemisphere(x + t * G);
      double fy = sign * K.value(y);
      if (fy > f) {
        x = y;
        f = fy;
        t *= 2.0;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace

FieldExtrema field_min_max(const ScalarField& K, int grid_density, unsigned long seed) {
  if (grid_density < 10) throw ConfigError("grid_density must be at least 10");
  const int n = K.dim();
  double count = std::pow(static_cast<double>(grid_density), n);
  const long samples = static_cast<long>(std::min(count, 200000.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  constexpr int kKeep = 24;
  std::vector<std::pair<double, Vec>> lows, highs;
  auto push = [](std::vector<std::pair<double, Vec>>& v, double key, const Vec& x) {
    if (static_cast<int>(v.size()) < kKeep) {
      v.emplace_back(key, x);
      return;
    }
    auto worst = std::max_element(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    if (key < worst->first) *worst = {key, x};
  };
  // Axis points and the poles of each coordinate are always inspected.
  std::vector<Vec> fixed;
  for (int k = 0; k <= n; ++k) {
    fixed.push_back(Vec::Unit(n + 1, k));
    if (k < n) fixed.push_back(-Vec::Unit(n + 1, k));
  }
  auto consider = [&](const Vec& x) {
    double v = K.value(x);
    push(lows, v, x);
    push(highs, -v, x);
  };
  for (const auto& x : fixed) consider(x);
  for (long s = 0; s < samples; ++s) {
    Vec x(n + 1);
    for (int k = 0; k <= n; ++k) x[k] = normal(rng);
    x[n] = std::abs(x[n]);
    consider(x / x.norm());
  }

  FieldExtrema out;
  out.K_min = std::numeric_limits<double>::infinity();
  out.K_max = -std::numeric_limits<double>::infinity();
  for (const auto& [key, x0] : lows) {
    Vec x = refine_extremum(K, x0, -1.0);
    double v = K.value(x);
    if (v < out.K_min) {
      out.K_min = v;
      out.argmin = x;
    }
  }
  for (const auto& [key, x0] : highs) {
    Vec x = refine_extremum(K, x0, 1.0);
    double v = K.value(x);
    if (v > out.K_max) {
      out.K_max = v;
      out.argmax = x;
    }
  }
  if (out.K_min <= 0.0) throw NonPositiveField("field minimum " + std::to_string(out.K_min) + " is not positive");
  return out;
}

}  // namespace nirenberg
