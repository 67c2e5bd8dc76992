#include <gtest/gtest.h>

#include <cmath>

#include "nirenberg/census.hpp"
#include "nirenberg/errors.hpp"
#include "nirenberg/quadrature.hpp"
#include "test_support.hpp"

using namespace nirenberg;
using testsupport::field;

namespace {

// K = base + sum c_k x_k^2 over the ambient coordinates.
ScalarField diagonal(int n, double base, const std::vector<double>& c) {
  std::vector<std::pair<std::string, double>> terms;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0.0) terms.push_back({"x" + std::to_string(k + 1) + "^2", c[k]});
  return field(n, base, terms);
}

ClassifiedSets sets_of(const ScalarField& K) {
  auto recs = find_critical_points(K);
  return classify(recs);
}

TEST(Counting, ClosedFormExamples) {
  const auto a1 = counting_A({0, 2, 1});
  EXPECT_EQ(a1.A1, 1);
  EXPECT_EQ(a1.A2, -1);
  EXPECT_EQ(a1.A3, -1);
  EXPECT_EQ(a1.A4, 0);
  const auto a2 = counting_A({0, 2, 4, 1, 3});
  EXPECT_EQ(a2.A1, 1);
  EXPECT_EQ(a2.A2, -2);
  EXPECT_EQ(a2.A3, -2);
  EXPECT_EQ(a2.A4, 1);
  EXPECT_EQ(a2.evens, 3);
  EXPECT_EQ(a2.odds, 2);
  const auto b0 = counting_B({});
  EXPECT_EQ(b0.B1, 0);
  EXPECT_EQ(b0.B2, 0);
  const auto b1 = counting_B({2, 3});
  EXPECT_EQ(b1.B1, 0);
  EXPECT_EQ(b1.B2, -1);
  EXPECT_EQ(counting_A({4, 4, 3}).A1, 1);
}

TEST(Census, LevelAndIndexFormulas) {
  const int n = 5;
  const double S = default_constants(n).S_n.value;
  EXPECT_NEAR(census_level(n, {1.0}, {}), std::pow(S, 2.0 / n), 1e-12);
  EXPECT_NEAR(census_level(n, {}, {1.0}), std::pow(2 * S, 2.0 / n), 1e-12);
  const double want = std::pow(S, 2.0 / n) * std::pow(std::pow(2.0, -1.5) + 2 * std::pow(3.0, -1.5), 2.0 / n);
  EXPECT_NEAR(census_level(n, {2.0}, {3.0}), want, 1e-12);
  EXPECT_EQ(census_index(n, {4, 3}, {5}), 3);
  EXPECT_EQ(census_index(n, {4}, {}), 0);
}

TEST(Census, HomologyDegreeIsIndex) {
  CensusEntry e;
  e.index = census_index(5, {4, 3}, {5});
  EXPECT_EQ(homology_contribution(e), 3);
  e.index = 0;
  EXPECT_EQ(homology_contribution(e), 0);
}

TEST(Census, LinearFieldHasOneEntry) {
  const int n = 5;
  const auto s = sets_of(field(n, 1.0, {{"x1", 0.05}}));
  const auto c = enumerate_census(s, n, 4);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].boundary_points.size(), 1u);
  EXPECT_EQ(c[0].index, 0);
  EXPECT_EQ(c[0].mass, 1);
  EXPECT_TRUE(enumerate_census(ClassifiedSets{}, n, 4).empty());
}

TEST(Census, TwoBoundaryOneInteriorSubsetCounts) {
  // Admissible: +-e1 (c1 above the mean) and the pole e6 (interior maximum).
  const int n = 5;
  const auto s = sets_of(diagonal(n, 2.0, {0.25, 0.04, 0.03, 0.02, 0.01, 0.2}));
  ASSERT_EQ(admissible_boundary_points(s, n).size(), 2u);
  ASSERT_EQ(s.K_in_minus.size(), 1u);
  // Mass <= 3: {z}, {z'}, {z, z'}, {y}, {z, y}, {z', y}. Mass 4 adds {z, z', y}.
  EXPECT_EQ(enumerate_census(s, n, 3).size(), 6u);
  const auto c = enumerate_census(s, n, 4);
  ASSERT_EQ(c.size(), 7u);
  for (std::size_t k = 1; k < c.size(); ++k) EXPECT_LE(c[k - 1].level, c[k].level);
  const auto bands = level_bands(n, 2.01, 2.25, 4);
  for (const auto& e : c) {
    EXPECT_EQ(e.mass, static_cast<int>(e.boundary_points.size() + 2 * e.interior_points.size()));
    EXPECT_GE(e.level, bands[e.mass - 1].min * (1 - 1e-14));
    EXPECT_LE(e.level, bands[e.mass - 1].max * (1 + 1e-14));
    EXPECT_GE(e.index, 0);
  }
}

TEST(Census, ChiBelowMatchesCountingIdentities) {
  const int n = 5;
  const auto s = sets_of(diagonal(n, 2.0, {0.25, 0.04, 0.03, 0.02, 0.01, 0.2}));
  const auto census = enumerate_census(s, n, 4);
  const auto bands = level_bands(n, 2.01, 2.25, 4);
  ASSERT_TRUE(bands_separated(n, 2.01, 2.25, 1));
  ASSERT_TRUE(bands_separated(n, 2.01, 2.25, 2));
  std::vector<int> bi, ii;
  for (const auto& z : admissible_boundary_points(s, n)) bi.push_back(n - 1 - z.morse_index);
  for (const auto& y : s.K_in_minus) ii.push_back(n - y.morse_index);
  const auto A = counting_A(bi);
  const auto B = counting_B(ii);
  EXPECT_EQ(chi_below(census, 0.5 * bands[0].min, bands), 0);
  EXPECT_EQ(chi_below(census, 0.5 * (bands[0].max + bands[1].min), bands), A.A1);
  EXPECT_EQ(chi_below(census, 0.5 * (bands[1].max + bands[2].min), bands), A.A1 - A.A2 + B.B1);
  int direct = 0;
  const double gap2 = 0.5 * (bands[1].max + bands[2].min);
  for (const auto& e : census)
    if (e.level < gap2) direct += (e.index % 2 == 0) ? 1 : -1;
  EXPECT_EQ(chi_below(census, gap2, bands), direct);
  EXPECT_THROW(chi_below(census, 0.5 * (bands[0].min + bands[0].max), bands), LevelInsideBand);
}

TEST(Bands, Examples) {
  const int n = 5;
  const double S = default_constants(n).S_n.value;
  const auto flat = level_bands(n, 1.0, 1.0, 3);
  for (int l = 1; l <= 3; ++l) {
    EXPECT_NEAR(flat[l - 1].min, std::pow(l * S, 2.0 / n), 1e-12);
    EXPECT_NEAR(flat[l - 1].max, flat[l - 1].min, 1e-12);
  }
  const auto b = level_bands(n, 1.0, 1.05, 4);
  for (int l = 1; l < 4; ++l) {
    EXPECT_NEAR(b[l].min / b[l - 1].min, std::pow((l + 1.0) / l, 2.0 / n), 1e-12);
    EXPECT_TRUE(bands_separated(n, 1.0, 1.05, l));
    EXPECT_LT(b[l - 1].max, b[l].min);
  }
}

TEST(Existence, LinearFieldT11Inconclusive) {
  const auto rep = existence_check(field(5, 1.0, {{"x1", 0.05}}), {Theorem::T1_1});
  ASSERT_EQ(rep.verdicts.size(), 1u);
  const auto& v = rep.verdicts[0];
  EXPECT_FALSE(v.solution_exists);
  EXPECT_EQ(v.conclusion(), "inconclusive");
  EXPECT_FALSE(v.hypotheses.at("K_infinity_at_least_2"));
  EXPECT_EQ(v.values.at("K_infinity_count"), 1.0);
  EXPECT_EQ(rep.strongest, -1);
}

TEST(Existence, EmptyBoundarySetConcludesT12) {
  // Independent of the last coordinate, with Delta K > 0 at every boundary critical point.
  const int n = 5;
  const auto K = diagonal(n, 2.0, {-0.05, -0.048, -0.046, -0.044, -0.042});
  const auto rep = existence_check(K);
  ASSERT_FALSE(rep.verdicts.empty());
  const auto& v = rep.verdicts[0];
  EXPECT_EQ(v.theorem, Theorem::T1_2);
  EXPECT_EQ(v.values.at("A1"), 0.0);
  EXPECT_TRUE(v.solution_exists);
  EXPECT_EQ(rep.strongest, 0);
}

TEST(Existence, PinchGateIsStrict) {
  for (int n : {5, 6}) {
    for (Theorem t : {Theorem::T1_1, Theorem::T1_2, Theorem::T1_3}) {
      ExistenceReport d;
      d.pinch = pinch_threshold(t, n);
      EXPECT_FALSE(evaluate_theorem(t, d, n).hypotheses.at("pinch"));
      d.pinch = std::nextafter(d.pinch, 0.0);
      EXPECT_TRUE(evaluate_theorem(t, d, n).hypotheses.at("pinch"));
    }
    EXPECT_DOUBLE_EQ(pinch_threshold(Theorem::T1_1, n), std::pow(1.25, 1.0 / (n - 2)));
    EXPECT_DOUBLE_EQ(pinch_threshold(Theorem::T1_2, n), std::pow(2.0, 1.0 / (n - 2)));
    EXPECT_DOUBLE_EQ(pinch_threshold(Theorem::T1_3, n), std::pow(1.5, 1.0 / (n - 2)));
  }
}

TEST(Existence, StrictModeThrowsOnViolation) {
  ExistenceOptions opt;
  opt.strict = true;
  EXPECT_THROW(existence_check(field(5, 1.0, {{"x1", 0.05}, {"x6", -0.03}}), {Theorem::T1_1}, opt),
               AssumptionViolation);
}

}  // namespace
