#include <gtest/gtest.h>

#include <random>

#include "nirenberg/errors.hpp"
#include "nirenberg/quadrature.hpp"
#include "nirenberg/reduced_model.hpp"
#include "test_support.hpp"

using namespace nirenberg;
using testsupport::field;
using testsupport::kSeed;

namespace {

Vec e(int n, int k) { return Vec::Unit(n + 1, k); }

Configuration make(const ScalarField& K, std::vector<std::pair<Vec, double>> boundary,
                   std::vector<std::pair<Vec, double>> interior, double eps = 0.1) {
  Configuration c;
  c.q = static_cast<int>(boundary.size());
  c.p = static_cast<int>(interior.size());
  c.eps = eps;
  for (auto& [a, l] : boundary) c.bubbles.emplace_back(a, l);
  for (auto& [a, l] : interior) c.bubbles.emplace_back(a, l);
  c.alpha.assign(c.size(), 1.0);
  return normalize_alphas(c, K);
}

Vec interior_point(int n, double h) {
  Vec v = e(n, 1);
  v[n] = h;
  return v / v.norm();
}

TEST(ReducedModel, ValidateInvariants) {
  const ScalarField K = ScalarField::constant(5, 1.0);
  Configuration c = make(K, {{e(5, 0), 100.0}}, {});
  EXPECT_NO_THROW(validate(c));
  Configuration low = c;
  low.bubbles[0].lambda = 5.0;
  EXPECT_THROW(validate(low), InvalidConfiguration);
  Configuration shallow = make(K, {}, {{interior_point(5, 0.5), 100.0}});
  shallow.bubbles[0] = BubbleParam(interior_point(5, 0.01), 100.0);
  EXPECT_THROW(validate(shallow), InvalidConfiguration);
  Configuration close = make(K, {{e(5, 0), 100.0}, {e(5, 0), 100.0}}, {});
  EXPECT_THROW(validate(close), InvalidConfiguration);
  Configuration neg = c;
  neg.alpha[0] = -1.0;
  EXPECT_THROW(validate(neg), InvalidConfiguration);
}

TEST(ReducedModel, NormalisationBalancesConstantField) {
  const ScalarField K = ScalarField::constant(5, 1.0);
  const Configuration c = make(K, {{e(5, 0), 200.0}}, {});
  const int n = 5;
  const double J = reduced_J(c, K).center;
  EXPECT_NEAR(std::pow(J, n / (n - 2.0)) * std::pow(c.alpha[0], 4.0 / (n - 2)), 1.0, 1e-3);
  EXPECT_LT(alpha_imbalance(c, K), 1e-12);
}

TEST(ReducedModel, NormalisationRatioForTwoBoundaryBubbles) {
  const int n = 5;
  const ScalarField K = field(n, 1.0, {{"x1", 0.05}});
  const Vec z1 = e(n, 0), z2 = e(n, 1);
  const Configuration c = make(K, {{z1, 300.0}, {z2, 300.0}}, {});
  EXPECT_NEAR(c.alpha[0] / c.alpha[1], std::pow(K.value(z2) / K.value(z1), (n - 2) / 4.0), 1e-12);
}

TEST(ReducedModel, ConstantFieldLevels) {
  for (int n : {5, 6, 7}) {
    const ScalarField K = ScalarField::constant(n, 1.0);
    const double S = default_constants(n).S_n.value;
    const Configuration b = make(K, {{e(n, 0), 1e5}}, {});
    const Interval Jb = reduced_J(b, K);
    EXPECT_NEAR(Jb.center, std::pow(S, 2.0 / n), 1e-8);
    EXPECT_TRUE(Jb.contains(std::pow(S, 2.0 / n)));
    const Configuration i = make(K, {}, {{interior_point(n, 0.8), 1e4}});
    const Interval Ji = reduced_J(i, K);
    EXPECT_NEAR(Ji.center / std::pow(2 * S, 2.0 / n), 1.0, 1e-6);
  }
}

TEST(ReducedModel, ExactScaleInvariance) {
  const ScalarField K = field(5, 1.0, {{"x1", 0.05}, {"x6", -0.02}});
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 20; ++k) {
    Configuration c = testsupport::random_configuration(K, 1 + k % 2, k % 2, rng);
    const double J = reduced_J(c, K).center;
    for (double t : {0.3, 2.0, 17.0}) {
      Configuration s = c;
      for (auto& a : s.alpha) a *= t;
      EXPECT_NEAR(reduced_J(s, K).center, J, 1e-13 * J);
    }
  }
}

TEST(ReducedModel, ExpansionAgainstQuadrature) {
  const int n = 5;
  for (double g_last : {0.0, -0.03}) {
    std::vector<std::pair<std::string, double>> terms = {{"x1", 0.05}};
    if (g_last != 0.0) terms.push_back({"x6", g_last});
    const ScalarField K = field(n, 1.0, terms);
    double prev_err = INFINITY;
    for (double lam : {10.0, 20.0, 40.0}) {
      const Configuration c = make(K, {{e(n, 0), lam}}, {}, 0.11);
      const Interval J = reduced_J(c, K);
      const double Jq = testsupport::quadrature_J_boundary_e1(n, 1.0, 0.05, g_last, lam);
      EXPECT_LE(std::abs(Jq - J.center), J.halfwidth) << "lambda " << lam;
      EXPECT_LT(std::abs(Jq - J.center), prev_err);
      prev_err = std::abs(Jq - J.center);
    }
  }
}

TEST(ReducedModel, LambdaGradientAgainstQuadrature) {
  const int n = 5;
  for (double g_last : {0.0, -0.03}) {
    std::vector<std::pair<std::string, double>> terms = {{"x1", 0.05}};
    if (g_last != 0.0) terms.push_back({"x6", g_last});
    const ScalarField K = field(n, 1.0, terms);
    const double lam = 20.0, h = 1e-3;
    const Configuration c = make(K, {{e(n, 0), lam}}, {}, 0.11);
    const double fd = (testsupport::quadrature_J_boundary_e1(n, 1.0, 0.05, g_last, lam * std::exp(h)) -
                       testsupport::quadrature_J_boundary_e1(n, 1.0, 0.05, g_last, lam * std::exp(-h))) /
                      (2 * h) / c.alpha[0];
    EXPECT_NEAR(grad_lambda_boundary(c, K, 0).center / fd, 1.0, 0.15);
  }
}

TEST(ReducedModel, BoundaryLambdaGradientSigns) {
  const int n = 5;
  const Configuration c1 = make(ScalarField::constant(n, 1.0), {{e(n, 0), 100.0}}, {});
  const Interval g1 = grad_lambda_boundary(c1, ScalarField::constant(n, 1.0), 0);
  EXPECT_TRUE(g1.contains(0.0));
  // dK/dnu > 0 at the centre: J decreases when lambda grows.
  const ScalarField K = field(n, 1.0, {{"x6", -0.05}});
  const Configuration c2 = make(K, {{e(n, 0), 100.0}}, {});
  const Interval g2 = grad_lambda_boundary(c2, K, 0);
  EXPECT_LT(g2.hi(), 0.0);
  EXPECT_THROW(grad_lambda_boundary(make(K, {}, {{interior_point(n, 0.8), 100.0}}), K, 0), IndexNotBoundary);
}

TEST(ReducedModel, InteriorLambdaGradientSigns) {
  const int n = 5;
  const ScalarField K1 = ScalarField::constant(n, 1.0);
  const Configuration c = make(K1, {}, {{interior_point(n, 0.9), 100.0}});
  EXPECT_GT(grad_lambda_interior(c, K1, 0).lo(), 0.0);
  // Interior maximum of K at the pole: Delta K < 0 there.
  const ScalarField K = field(n, 1.0, {{"x6^2", 0.1}});
  const Configuration top = make(K, {}, {{e(n, n), 500.0}});
  EXPECT_LT(K.laplace_beltrami(e(n, n)), 0.0);
  EXPECT_LT(grad_lambda_interior(top, K, 0).hi(), 0.0);
  EXPECT_THROW(grad_lambda_interior(make(K1, {{e(n, 0), 100.0}}, {}), K1, 0), IndexNotInterior);
}

TEST(ReducedModel, TangentGradientVanishesAtBoundaryCriticalPoint) {
  const int n = 5;
  const ScalarField K = field(n, 1.0, {{"x1", 0.05}, {"x6", -0.02}});
  const Configuration c = make(K, {{e(n, 0), 200.0}}, {});
  const TangentGradient g = grad_a(c, K, 0);
  EXPECT_LE(g.value.norm(), g.halfwidth);
  EXPECT_NEAR(g.value[n], 0.0, 1e-15);
}

TEST(ReducedModel, AlphaGradientRestores) {
  const int n = 5;
  const ScalarField K = field(n, 1.0, {{"x1", 0.05}, {"x6", -0.02}});
  const Configuration c = make(K, {{e(n, 0), 200.0}, {e(n, 1), 250.0}}, {});
  for (int i = 0; i < 2; ++i) EXPECT_TRUE(grad_alpha(c, K, i).contains(0.0));
  Configuration up = c;
  up.alpha[0] *= 1.1;
  EXPECT_LT(grad_alpha(up, K, 0).hi(), 0.0);
}

TEST(ReducedModel, GradientsMatchFiniteDifferences) {
  const ScalarField K = field(5, 1.0, {{"x1", 0.05}, {"x1*x2", 0.03}, {"x6", -0.02}, {"x3^2", 0.02}});
  std::mt19937_64 rng(kSeed + 11);
  auto J = [&](const Configuration& x) { return reduced_J(x, K).center; };
  for (int s = 0; s < 30; ++s) {
    Configuration c = testsupport::random_configuration(K, 1 + s % 2, s % 3 == 0 ? 1 : 0, rng);
    c.alpha[0] *= 1.01;
    for (int i = 0; i < c.size(); ++i) {
      const double h = 1e-4, ai = c.alpha[i];
      Configuration p = c, m = c;
      p.alpha[i] *= 1 + h;
      m.alpha[i] *= 1 - h;
      const Interval ga = grad_alpha(c, K, i);
      EXPECT_NEAR((J(p) - J(m)) / (2 * h * ai), ga.center, ga.halfwidth + 1e-8);
      p = c;
      m = c;
      p.bubbles[i].lambda *= std::exp(h);
      m.bubbles[i].lambda *= std::exp(-h);
      const Interval gl = grad_lambda(c, K, i);
      EXPECT_NEAR((J(p) - J(m)) / (2 * h) / ai, gl.center, gl.halfwidth + 1e-8);
    }
  }
}

TEST(ReducedModel, GradientComponentsBundle) {
  const ScalarField K = field(5, 1.0, {{"x1", 0.05}, {"x6", -0.02}});
  std::mt19937_64 rng(kSeed);
  const Configuration c = testsupport::random_configuration(K, 2, 1, rng);
  const auto g = gradient_components(c, K);
  ASSERT_EQ(g.alpha.size(), 3u);
  EXPECT_GE(g.R1, 0.0);
  EXPECT_GE(g.R1b, 0.0);
  EXPECT_DOUBLE_EQ(g.lambda[1].center, grad_lambda(c, K, 1).center);
  EXPECT_DOUBLE_EQ(g.eps(0, 2), epsilon(c.bubbles[0], c.bubbles[2]));
}

TEST(ReducedModel, VbarBudget) {
  const int n = 5;
  const ScalarField K = ScalarField::constant(n, 1.0);
  const Configuration c = make(K, {{e(n, 0), 80.0}}, {});
  EXPECT_NEAR(vbar_budget(c, K, 2.5), 2.5 / (80.0 * 80.0), 1e-15);
  const ScalarField Kg = field(n, 1.0, {{"x1", 0.05}, {"x6", -0.02}});
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 20; ++k) {
    Configuration a = testsupport::random_configuration(Kg, 2, 1, rng);
    Configuration b = a;
    for (auto& bb : b.bubbles) bb.lambda *= 1.5;
    EXPECT_LE(vbar_budget(b, Kg), vbar_budget(a, Kg));
  }
}

TEST(ReducedModel, MovePointStaysAdmissible) {
  const ScalarField K = ScalarField::constant(5, 1.0);
  const Configuration c = make(K, {{e(5, 0), 100.0}}, {{interior_point(5, 0.7), 100.0}});
  Vec v = Vec::Zero(6);
  v[1] = 0.1;
  v[5] = 0.3;
  const Configuration m = move_point(c, 0, v);
  EXPECT_NEAR(m.bubbles[0].a[5], 0.0, 1e-15);
  EXPECT_NEAR(m.bubbles[0].a.norm(), 1.0, 1e-14);
  EXPECT_NEAR(admissible_tangent(c, 0, v)[5], 0.0, 1e-15);
}

}  // namespace
