#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "nirenberg/bubbles.hpp"
#include "nirenberg/errors.hpp"
#include "nirenberg/geometry.hpp"
#include "test_support.hpp"

using namespace nirenberg;
using testsupport::kSeed;

namespace {

Vec e(int n, int k) { return Vec::Unit(n + 1, k); }

TEST(Bubble, UnitRateIsConstant) {
  for (int n : {5, 6, 7}) {
    const BubbleParam b(e(n, 0), 1.0);
    std::mt19937_64 rng(kSeed);
    for (int k = 0; k < 10; ++k) {
      const Vec x = testsupport::random_interior(n, rng, 0.0);
      EXPECT_NEAR(delta(b, x), bubble_c0(n) * std::pow(2.0, -(n - 2) / 2.0), 1e-12);
    }
  }
}

TEST(Bubble, PeakValue) {
  const int n = 5;
  const double lam = 37.0;
  const BubbleParam b(e(n, 1), lam);
  EXPECT_NEAR(delta(b, e(n, 1)), bubble_c0(n) * std::pow(lam, (n - 2) / 2.0) * std::pow(2.0, -(n - 2) / 2.0), 1e-9);
}

TEST(Bubble, RejectsBadParameters) {
  EXPECT_THROW(BubbleParam(e(5, 0), 0.0), InvalidConfiguration);
  Vec low = Vec::Zero(6);
  low[5] = -1.0;
  EXPECT_THROW(BubbleParam(low, 10.0), InvalidPoint);
}

TEST(Bubble, ChartPullbackIsExact) {
  const int n = 5;
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 20; ++k) {
    const BubbleParam b(testsupport::random_interior(n, rng, 0.0), 5.0 + 50.0 * k);
    const ChartBubble cb = chart_bubble(b);
    for (int s = 0; s < 5; ++s) {
      const Vec y = testsupport::random_interior(n, rng, 0.0);
      if (y[0] < -0.95) continue;
      const Vec x = stereographic_to_halfspace(SpherePoint(y)).coords();
      const double pull = std::pow((1 + x.squaredNorm()) / 2.0, (n - 2) / 2.0) * flat_bubble(n, cb.center, cb.mu, x);
      EXPECT_NEAR(pull / delta(b, y), 1.0, 1e-10);
    }
  }
}

TEST(ProjectedBubble, BoundaryCentreUsesExactBubble) {
  const int n = 5;
  const BubbleParam b(e(n, 2), 80.0);
  EXPECT_THROW(PhiApprox{b}, BoundaryPoint);
  // The bubble itself already satisfies the Neumann condition: its height derivative vanishes on the equator.
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 20; ++k) {
    const Vec z = testsupport::random_equator(n, rng);
    const double h = 1e-6;
    Vec up = z;
    up[n] = h;
    up.normalize();
    EXPECT_NEAR((delta(b, up) - delta(b, z)) / h, 0.0, 1e-6 * delta(b, z) * b.lambda);
  }
}

TEST(ProjectedBubble, SandwichWithBudget) {
  const int n = 5;
  std::mt19937_64 rng(kSeed);
  int checked = 0;
  for (int k = 0; k < 10; ++k) {
    const BubbleParam b(testsupport::random_interior(n, rng, 0.3), 40.0 + 30.0 * k);
    const PhiApprox phi(b);
    for (int s = 0; s < 100; ++s) {
      const Vec y = testsupport::random_interior(n, rng, 0.0);
      if (y[0] < -0.9) continue;
      const double d = delta(b, y), v = phi.sphere_value(y), bud = phi.sphere_budget(y);
      EXPECT_LE(d, v + bud);
      EXPECT_LE(v - bud, 2.0 * d);
      ++checked;
    }
  }
  EXPECT_GT(checked, 900);
}

TEST(ProjectedBubble, HalfspaceRegularPart) {
  for (int n : {5, 6}) {
    Vec a = Vec::Zero(n), x = Vec::Zero(n);
    a[n - 1] = 1.0;
    x[n - 1] = 2.0;
    EXPECT_NEAR(halfspace_H(a, x), std::pow(3.0, 2 - n), 1e-15);
  }
}

TEST(ProjectedBubble, SphereRegularPartIsSymmetric) {
  const int n = 5;
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 20; ++k) {
    const Vec a = testsupport::random_interior(n, rng, 0.1), b = testsupport::random_interior(n, rng, 0.1);
    EXPECT_NEAR(sphere_H(a, b), sphere_H(b, a), 1e-12 * sphere_H(a, b));
  }
}

TEST(ProjectedBubble, NormalDerivativeOfCorrectedBubbleVanishesInChart) {
  // d/dx_n of the two-term approximation at the boundary hyperplane is of lower order than that of the bubble.
  const int n = 5;
  Vec a = e(n, 0);
  a[n] = 0.2;
  a.normalize();
  const BubbleParam b(a, 60.0);
  const PhiApprox phi(b);
  const Vec c = phi.chart().center;
  Vec x = c;
  x[n - 1] = 0.0;
  x[0] += 0.05;
  const double h = 1e-6;
  Vec xp = x;
  xp[n - 1] = h;
  const double d_phi = (phi.chart_value(xp) - phi.chart_value(x)) / h;
  const double d_bub = (phi.chart_delta(xp) - phi.chart_delta(x)) / h;
  EXPECT_LT(std::abs(d_phi), 0.2 * std::abs(d_bub));
}

TEST(Epsilon, Examples) {
  for (int n : {5, 6, 7}) {
    const BubbleParam b(e(n, 0), 7.0);
    EXPECT_NEAR(epsilon(b, b), std::pow(2.0, -(n - 2) / 2.0), 1e-15);
    const BubbleParam u1(e(n, 0), 1.0), u2(e(n, 1), 1.0);
    EXPECT_NEAR(epsilon(u1, u2), std::pow(2.0, -(n - 2)), 1e-15);
  }
  EXPECT_NEAR(epsilon(BubbleParam(e(5, 0), 1.0), BubbleParam(e(5, 1), 1.0)), 0.125, 1e-15);
}

TEST(Epsilon, IsSymmetric) {
  const int n = 5;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(1.0, 1000.0);
  for (int k = 0; k < 100; ++k) {
    const BubbleParam a(testsupport::random_interior(n, rng, 0.0), u(rng));
    const BubbleParam b(testsupport::random_interior(n, rng, 0.0), u(rng));
    EXPECT_NEAR(epsilon(a, b), epsilon(b, a), 1e-14 * epsilon(a, b));
  }
}

TEST(Epsilon, LambdaDerivativesMatchFiniteDifferences) {
  const int n = 6;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(2.0, 300.0);
  for (int k = 0; k < 50; ++k) {
    BubbleParam a(testsupport::random_interior(n, rng, 0.0), u(rng));
    const BubbleParam b(testsupport::random_interior(n, rng, 0.0), u(rng));
    const auto d = epsilon_dlambda(a, b);
    const double h = 1e-6;
    BubbleParam ap = a, am = a;
    ap.lambda *= std::exp(h);
    am.lambda *= std::exp(-h);
    const double fd = (epsilon(ap, b) - epsilon(am, b)) / (2 * h);
    EXPECT_NEAR(d.di, fd, 1e-6 * std::abs(fd) + 1e-14);
    const auto r = epsilon_dlambda(b, a);
    EXPECT_NEAR(r.dj, d.di, 1e-12 * std::abs(d.di) + 1e-16);
  }
}

TEST(Epsilon, CoincidentEqualRatesAreStationary) {
  const BubbleParam b(e(5, 3), 42.0);
  const auto d = epsilon_dlambda(b, b);
  EXPECT_NEAR(d.di, 0.0, 1e-15);
  EXPECT_NEAR(d.dj, 0.0, 1e-15);
  EXPECT_NEAR(epsilon_da(b, b).norm(), 0.0, 1e-15);
}

TEST(Epsilon, PointGradientMatchesFiniteDifferences) {
  const int n = 5;
  std::mt19937_64 rng(kSeed + 3);
  for (int k = 0; k < 30; ++k) {
    const BubbleParam a(testsupport::random_interior(n, rng, 0.2), 30.0);
    const BubbleParam b(testsupport::random_interior(n, rng, 0.2), 45.0);
    Vec v = tangent_projector(a.a) * testsupport::random_interior(n, rng, 0.0);
    v /= v.norm();
    const double h = 1e-6;
    const double fd = (epsilon(BubbleParam(sphere_exp(a.a, h * v), a.lambda), b) -
                       epsilon(BubbleParam(sphere_exp(a.a, -h * v), a.lambda), b)) /
                      (2 * h);
    EXPECT_NEAR(epsilon_da(a, b).dot(v), fd, 1e-6 * std::abs(fd) + 1e-15);
  }
}

TEST(Epsilon, SeparatedAsymptoticConverges) {
  // eps (l_i l_j)^{(n-2)/2} |a_i - a_j|^{n-2} tends to one as the rates grow with fixed points.
  const int n = 5;
  const Vec a = e(n, 0), b = sphere_exp(e(n, 0), 0.8 * e(n, 1));
  double prev = 0.0;
  for (double lam = 50.0; lam <= 6400.0; lam *= 2.0) {
    const double v = epsilon(BubbleParam(a, lam), BubbleParam(b, 1.3 * lam)) *
                     std::pow(lam * 1.3 * lam, (n - 2) / 2.0) * std::pow((a - b).norm(), n - 2);
    if (prev > 0.0 && lam > 400.0) EXPECT_NEAR(v / prev, 1.0, 0.05);
    prev = v;
  }
  EXPECT_NEAR(prev, 1.0, 1e-3);
}

}  // namespace
