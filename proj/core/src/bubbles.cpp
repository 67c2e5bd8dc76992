#include "nirenberg/bubbles.hpp"

#include <algorithm>
#include <cmath>

#include "nirenberg/errors.hpp"

namespace nirenberg {

double bubble_c0(int n) { return std::pow(static_cast<double>(n) * (n - 2), (n - 2) / 4.0); }

BubbleParam::BubbleParam(const SpherePoint& p, double lam) : a(p.coords()), lambda(lam) {
  if (!(lam > 0.0)) throw InvalidConfiguration("bubble rate must be positive");
}

BubbleParam::BubbleParam(Vec point, double lam) : BubbleParam(SpherePoint(std::move(point)), lam) {}

double BubbleParam::boundary_distance() const { return std::asin(std::clamp(a[a.size() - 1], 0.0, 1.0)); }

double delta(const BubbleParam& b, const Vec& x) {
  const int n = b.dim();
  const double l2 = b.lambda * b.lambda;
  // lambda^2 + 1 + (1 - lambda^2) cos d, with 1 - cos d taken from the chord.
  const double one_minus_cos = 0.5 * (x - b.a).squaredNorm();
  const double den = 2.0 + (l2 - 1.0) * one_minus_cos;
  return bubble_c0(n) * std::pow(b.lambda, (n - 2) / 2.0) * std::pow(den, -(n - 2) / 2.0);
}

double delta(const BubbleParam& b, const SpherePoint& x) { return delta(b, x.coords()); }

double flat_bubble(int n, const Vec& center, double mu, const Vec& x) {
  return bubble_c0(n) * std::pow(mu, (n - 2) / 2.0) * std::pow(1.0 + mu * mu * (x - center).squaredNorm(), -(n - 2) / 2.0);
}

ChartBubble chart_bubble(const BubbleParam& b) {
  const int n = b.dim();
  const double l2 = b.lambda * b.lambda;
  const double a0 = b.a[0];
  if ((b.a + Vec::Unit(n + 1, 0)).norm() < 1e-10) throw PoleSingularity("bubble centred at the projection pole");
  const double A = (l2 + 1.0) + (l2 - 1.0) * a0;
  ChartBubble c;
  c.center = (l2 - 1.0) * b.a.tail(n) / A;
  if (c.center[n - 1] < 0.0) c.center[n - 1] = 0.0;
  c.mu = A / (2.0 * b.lambda);
  return c;
}

double halfspace_H(const Vec& a, const Vec& x) {
  const int n = static_cast<int>(a.size());
  Vec abar = a;
  abar[n - 1] = -abar[n - 1];
  return std::pow((x - abar).norm(), 2.0 - n);
}

double sphere_H(const Vec& a, const Vec& b) {
  const int n = static_cast<int>(a.size()) - 1;
  return std::pow((a - mirror(b)).norm(), 2.0 - n);
}

PhiApprox::PhiApprox(const BubbleParam& b, double budget_constant) : n_(b.dim()), chart_(chart_bubble(b)) {
  if (b.a[n_] <= 1e-12) throw BoundaryPoint("projected bubble equals the standard bubble at boundary points");
  const double C = budget_constant > 0.0 ? budget_constant : bubble_c0(n_) * n_;
  const double d = chart_.center[n_ - 1];
  budget_ = C / (std::pow(chart_.mu, (n_ + 2) / 2.0) * std::pow(d, n_));
}

double PhiApprox::chart_delta(const Vec& x) const { return flat_bubble(n_, chart_.center, chart_.mu, x); }

double PhiApprox::chart_value(const Vec& x) const {
  return chart_delta(x) + bubble_c0(n_) * halfspace_H(chart_.center, x) / std::pow(chart_.mu, (n_ - 2) / 2.0);
}

namespace {
double pullback_factor(const Vec& y, int n) {
  const Vec x = stereographic_to_halfspace(SpherePoint::normalized(y)).coords();
  return std::pow(0.5 * (1.0 + x.squaredNorm()), (n - 2) / 2.0);
}
Vec chart_of(const Vec& y) { return stereographic_to_halfspace(SpherePoint::normalized(y)).coords(); }
}  // namespace

double PhiApprox::sphere_delta(const Vec& y) const { return pullback_factor(y, n_) * chart_delta(chart_of(y)); }

double PhiApprox::sphere_value(const Vec& y) const { return pullback_factor(y, n_) * chart_value(chart_of(y)); }

double PhiApprox::sphere_budget(const Vec& y) const { return pullback_factor(y, n_) * budget_; }

double epsilon(const BubbleParam& bi, const BubbleParam& bj) {
  const int n = bi.dim();
  const double li = bi.lambda, lj = bj.lambda;
  const double one_minus_cos = 0.5 * (bi.a - bj.a).squaredNorm();
  const double D = li / lj + lj / li + 2.0 * li * lj * one_minus_cos;
  return std::pow(D, -(n - 2) / 2.0);
}

EpsilonLambdaDerivs epsilon_dlambda(const BubbleParam& bi, const BubbleParam& bj) {
  const int n = bi.dim();
  const double li = bi.lambda, lj = bj.lambda;
  const double one_minus_cos = 0.5 * (bi.a - bj.a).squaredNorm();
  const double D = li / lj + lj / li + 2.0 * li * lj * one_minus_cos;
  const double pre = -0.5 * (n - 2) * std::pow(D, -n / 2.0);
  const double cross = 2.0 * li * lj * one_minus_cos;
  return {pre * (li / lj - lj / li + cross), pre * (lj / li - li / lj + cross)};
}

Vec epsilon_da(const BubbleParam& bi, const BubbleParam& bj) {
  const int n = bi.dim();
  const double e = epsilon(bi, bj);
  return (n - 2) * bi.lambda * bj.lambda * std::pow(e, n / (n - 2.0)) * (bj.a - bi.a);
}

}  // namespace nirenberg
