#include <gtest/gtest.h>

#include <algorithm>

#include "nirenberg/errors.hpp"
#include "nirenberg/landscape.hpp"
#include "test_support.hpp"

using namespace nirenberg;
using testsupport::field;

namespace {

Vec e(int n, int k) { return Vec::Unit(n + 1, k); }

std::vector<CriticalPointRecord> boundary_records(const std::vector<CriticalPointRecord>& all) {
  std::vector<CriticalPointRecord> out;
  for (const auto& r : all)
    if (r.kind == CriticalKind::BoundaryOfK1) out.push_back(r);
  return out;
}

const CriticalPointRecord* near(const std::vector<CriticalPointRecord>& rs, const Vec& p, double tol = 1e-6) {
  for (const auto& r : rs)
    if ((r.location - p).norm() < tol) return &r;
  return nullptr;
}

TEST(Landscape, LinearFieldHasTwoBoundaryPoints) {
  const int n = 5;
  const ScalarField K = field(n, 1.0, {{"x1", 0.05}});
  const auto b = boundary_records(find_critical_points(K));
  ASSERT_EQ(b.size(), 2u);
  const auto* top = near(b, e(n, 0));
  const auto* bot = near(b, -e(n, 0));
  ASSERT_TRUE(top && bot);
  EXPECT_NEAR(top->laplacian, -0.05 * n, 1e-9);
  EXPECT_NEAR(bot->laplacian, 0.05 * n, 1e-9);
  EXPECT_EQ(top->morse_index, n - 1);
  EXPECT_EQ(bot->morse_index, 0);
  EXPECT_NEAR(top->normal_derivative, 0.0, 1e-12);
}

TEST(Landscape, ConstantFieldIsDegenerate) {
  EXPECT_THROW(find_critical_points(ScalarField::constant(5, 1.0)), DegenerateCriticalPoint);
  LandscapeOptions opt;
  opt.throw_on_degenerate = false;
  // A critical set that is not discrete cannot be recorded at all.
  EXPECT_THROW(find_critical_points(ScalarField::constant(5, 1.0), opt), DegenerateCriticalPoint);
}

TEST(Landscape, DiagonalQuadraticOracle) {
  // K = 2 + sum c_k x_k^2: boundary critical points are +-e_k with value 2 + c_k,
  // Morse index #{j : c_j < c_k} and Delta K = 2 sum c - 2 (n+1) c_k.
  const int n = 5;
  const std::vector<double> c = {0.12, 0.08, 0.03, 0.02, 0.01, 0.2};
  std::vector<std::pair<std::string, double>> terms;
  for (int k = 0; k <= n; ++k) terms.push_back({"x" + std::to_string(k + 1) + "^2", c[k]});
  const ScalarField K = field(n, 2.0, terms);
  auto all = find_critical_points(K);
  const auto b = boundary_records(all);
  EXPECT_EQ(b.size(), 2u * n);
  double sum = 0.0;
  for (double v : c) sum += v;
  for (int k = 0; k < n; ++k) {
    int idx = 0;
    for (int j = 0; j < n; ++j) idx += c[j] < c[k];
    for (double s : {1.0, -1.0}) {
      const auto* r = near(b, s * e(n, k));
      ASSERT_TRUE(r) << "k=" << k;
      EXPECT_EQ(r->morse_index, idx);
      EXPECT_NEAR(r->value, 2.0 + c[k], 1e-12);
      EXPECT_NEAR(r->laplacian, 2.0 * sum - 2.0 * (n + 1) * c[k], 1e-9);
    }
  }
  const auto* top = near(all, e(n, n));
  ASSERT_TRUE(top);
  EXPECT_EQ(top->kind, CriticalKind::InteriorOfK);
  EXPECT_EQ(top->morse_index, n);
  const auto sets = classify(all);
  EXPECT_EQ(sets.K_b_0_minus.size(), 4u);
  EXPECT_EQ(sets.K_in_minus.size(), 1u);
  EXPECT_TRUE(sets.K_b_plus.empty());
}

TEST(Landscape, PoincareHopfOnEquator) {
  for (int n : {5, 6}) {
    const ScalarField K = field(n, 1.0, {{"x1", 0.05}, {"x1*x2", 0.03}, {"x3^2", 0.02}, {"x2^2", -0.01}});
    const auto b = boundary_records(find_critical_points(K));
    int chi = 0;
    for (const auto& r : b) chi += (r.morse_index % 2 == 0) ? 1 : -1;
    EXPECT_EQ(chi, n % 2 == 1 ? 2 : 0) << "n=" << n;
  }
}

TEST(Landscape, RescalingPreservesStructure) {
  const ScalarField K = field(5, 1.0, {{"x1", 0.05}, {"x6", -0.02}, {"x3^2", 0.02}});
  auto a = find_critical_points(K);
  auto b = find_critical_points(K.scaled(3.0));
  ASSERT_EQ(a.size(), b.size());
  classify(a);
  classify(b);
  for (const auto& r : a) {
    const auto* s = near(b, r.location, 1e-7);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->morse_index, r.morse_index);
    EXPECT_EQ(s->classification, r.classification);
    EXPECT_NEAR(s->value, 3.0 * r.value, 1e-10);
  }
}

TEST(Landscape, ClassificationExamples) {
  const int n = 5;
  auto lin = find_critical_points(field(n, 1.0, {{"x1", 0.05}}));
  const auto s1 = classify(lin);
  ASSERT_EQ(s1.K_b_0_minus.size(), 1u);
  EXPECT_NEAR((s1.K_b_0_minus[0].location - e(n, 0)).norm(), 0.0, 1e-9);
  EXPECT_TRUE(s1.K_b_plus.empty());

  auto tilt = find_critical_points(field(n, 1.0, {{"x1", 0.05}, {"x6", -0.03}}));
  const auto s2 = classify(tilt);
  ASSERT_EQ(s2.K_b_plus.size(), 2u);
  EXPECT_TRUE(s2.K_b_0_minus.empty());

  auto cap = find_critical_points(field(n, 1.0, {{"x6^2", 0.1}, {"x1", 0.02}}));
  const auto s3 = classify(cap);
  ASSERT_EQ(s3.K_in_minus.size(), 1u);
  EXPECT_GT(s3.K_in_minus[0].location[n], 0.5);
  EXPECT_LT(s3.K_in_minus[0].laplacian, 0.0);
}

TEST(Landscape, DeadBandIsAmbiguous) {
  CriticalPointRecord r;
  r.kind = CriticalKind::BoundaryOfK1;
  r.normal_derivative = 5e-9;
  EXPECT_THROW(classify_record(r), AmbiguousSign);
  r.normal_derivative = 1e-7;
  EXPECT_EQ(classify_record(r), Classification::KBPlus);
}

TEST(Assumptions, SaddleWithPositiveNormalDerivativeViolatesH2) {
  const int n = 5;
  const ScalarField K = field(n, 1.0, {{"x1", 0.05}, {"x6", -0.03}});
  const auto recs = find_critical_points(K);
  const auto rep = check_assumptions(recs, K);
  EXPECT_TRUE(rep.H1);
  EXPECT_FALSE(rep.H2);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_NE(rep.violations[0].find("H2"), std::string::npos);
}

TEST(Assumptions, QuadraticVanishingNormalDerivativeSatisfiesH3) {
  // dK/dnu = -0.02 (1 - x1) on the equator vanishes to second order at e1.
  const int n = 5;
  const ScalarField K = field(n, 1.0, {{"x1", 0.05}, {"x6", 0.02}, {"x1*x6", -0.02}});
  const auto recs = find_critical_points(K);
  const auto rep = check_assumptions(recs, K);
  EXPECT_TRUE(rep.H3);
  const auto it = std::find_if(rep.H3_checks.begin(), rep.H3_checks.end(),
                               [&](const auto& c) { return (c.z - e(n, 0)).norm() < 1e-6; });
  ASSERT_NE(it, rep.H3_checks.end());
  EXPECT_FALSE(it->branch_i);
  EXPECT_TRUE(it->branch_ii);
  EXPECT_LE(it->ratio_last, 0.01 * it->ratio_first);
}

TEST(Assumptions, LinearVanishingNormalDerivativeViolatesH3) {
  const int n = 5;
  const ScalarField K = field(n, 1.0, {{"x1", 0.05}, {"x2*x6", 0.02}});
  const auto recs = find_critical_points(K);
  const auto rep = check_assumptions(recs, K);
  EXPECT_FALSE(rep.H3);
  EXPECT_NEAR(h3_ratio(K, e(n, 0), 0.05) / h3_ratio(K, e(n, 0), 0.05 / 1024), 1.0, 0.05);
}

TEST(Assumptions, LinearFieldSatisfiesEverything) {
  const ScalarField K = field(5, 1.0, {{"x1", 0.05}});
  const auto rep = check_assumptions(find_critical_points(K), K);
  EXPECT_TRUE(rep.H1 && rep.H2 && rep.H3);
  EXPECT_TRUE(rep.violations.empty());
}

}  // namespace
