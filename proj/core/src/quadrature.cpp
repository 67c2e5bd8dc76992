#include "nirenberg/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "nirenberg/errors.hpp"

namespace nirenberg {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

template <unsigned Points>
QuadResult gk(double a, double b, double tol) {
  // r = tan(t) turns the half line into [0, pi/2] with a polynomial-trig integrand.
  const double e = 2.0 * b - a - 2.0;
  auto f = [a, e](double t) {
    const double s = std::sin(t), c = std::cos(t);
    if (s == 0.0 && a > 0.0) return 0.0;
    if (c == 0.0 && e > 0.0) return 0.0;
    return std::pow(s, a) * std::pow(c, e);
  };
  double err = 0.0, l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, 0.0, kHalfPi, 15, tol * 1e-3, &err, &l1);
  return {v, err};
}

}  // namespace

QuadResult radial_moment(double a, double b, double tol, bool high_order) {
  if (!(2.0 * b - a - 1.0 > 0.0) || a <= -1.0) throw DomainError("DivergentIntegral", "radial moment diverges");
  QuadResult r = high_order ? gk<61>(a, b, tol) : gk<31>(a, b, tol);
  if (!(r.error <= tol * std::max(1.0, std::abs(r.value)))) throw ToleranceNotMet("radial moment refinement stalled");
  return r;
}

double radial_moment_closed(double a, double b) {
  const double x = 0.5 * (a + 1.0);
  return 0.5 * boost::math::beta(x, b - x);
}

double sphere_area(int dim) {
  const double k = 0.5 * (dim + 1);
  return 2.0 * std::pow(std::numbers::pi, k) / boost::math::tgamma(k);
}

std::string ConstantsTable::version() const {
  std::ostringstream os;
  os << "nirenberg-constants/1 n=" << n << " tol=" << tol;
  return os.str();
}

std::vector<std::pair<std::string, ConstantEntry>> ConstantsTable::entries() const {
  return {{"c0", c0}, {"S_n", S_n}, {"c2", c2}, {"c3", c3}, {"c4", c4},  {"c5", c5},
          {"c6", c6}, {"c7", c7},   {"c9", c9}, {"c_in", c_in}};
}

ConstantsTable compute_constants(int n, double tol, bool high_order) {
  if (n < 5) throw ConfigError("dimension must be at least 5");
  if (!(tol >= 1e-12 && tol <= 1e-4)) throw ConfigError("tolerance must lie in [1e-12, 1e-4]");
  ConstantsTable t;
  t.n = n;
  t.tol = tol;
  const double N = n;
  const double c0 = std::pow(N * (N - 2.0), (N - 2.0) / 4.0);
  const double I = std::pow(c0, 2.0 * N / (N - 2.0));
  const double Om = sphere_area(n - 1);
  const double hm = sphere_area(n - 2) / (N - 1.0);
  t.omega = Om;
  t.half_moment = hm;
  t.c0 = {c0, 0.0, c0};

  struct Term {
    double a, b;
  };
  auto R = [&](Term x) { return radial_moment(x.a, x.b, tol, high_order); };
  auto Rc = [&](Term x) { return radial_moment_closed(x.a, x.b); };
  auto entry = [](double pre, QuadResult q, double closed) {
    return ConstantEntry{pre * q.value, std::abs(pre) * q.error + 1e-15 * std::abs(pre * q.value), pre * closed};
  };
  auto entry2 = [](double pre, QuadResult p, QuadResult m, double closed) {
    const double v = pre * (p.value - m.value);
    return ConstantEntry{v, std::abs(pre) * (p.error + m.error) + 1e-15 * std::abs(v), pre * closed};
  };

  const Term sn{N - 1, N}, m2{N + 1, N}, m1{N, N}, a3{N + 2, N + 1}, b3{N, N + 1}, a5{N + 1, N + 1};
  const Term k2{N - 1, (N + 2) / 2}, a9{N + 3, N + 1};

  t.S_n = entry(I * Om / 2.0, R(sn), Rc(sn));
  t.c6 = entry((N - 2) / (N * N) * I * Om / 2.0, R(m2), Rc(m2));
  t.c7 = entry(2.0 * (N - 2) / N * I * hm, R(m1), Rc(m1));
  t.c3 = entry2((N - 2) / 2.0 * I * hm, R(a3), R(b3), Rc(a3) - Rc(b3));
  t.c4 = entry((N - 2) * I * hm, R(b3), Rc(b3));
  t.c5 = entry((N - 2) / (2 * N) * I * Om / N, R(a5), Rc(a5));
  t.c2 = entry(I * Om, R(k2), Rc(k2));
  t.c9 = entry2((N - 2) / (2 * N) * I * Om / 2.0, R(a9), R(a5), Rc(a9) - Rc(a5));
  t.c_in = {4.0 * t.c6.value, 4.0 * t.c6.error, 4.0 * *t.c6.closed_form};

  for (const auto& [name, e] : t.entries()) {
    if (!std::isfinite(e.value)) throw ToleranceNotMet(name + " is not finite");
    if (e.error > tol * std::max(1.0, std::abs(e.value))) throw ToleranceNotMet(name + " error estimate exceeds tolerance");
  }
  return t;
}

const ConstantsTable& default_constants(int n) {
  static std::mutex mu;
  static std::map<int, ConstantsTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_constants(n)).first;
  return it->second;
}

double c2_interaction_constant(int n, double tol) { return compute_constants(n, tol).c2.value; }

}  // namespace nirenberg
