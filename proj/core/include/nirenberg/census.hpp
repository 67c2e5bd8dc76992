#pragma once

#include <map>
#include <string>
#include <vector>

#include "nirenberg/field.hpp"
#include "nirenberg/landscape.hpp"

namespace nirenberg {

struct LevelBand {
  int ell = 0;
  double min = 0.0;
  double max = 0.0;
};

std::vector<LevelBand> level_bands(int n, double K_min, double K_max, int ell_max);
// C^{ell}_max (K_max/K_min)^{(n-2)/n} < C^{ell+1}_min, the separation used by the deformation argument.
bool bands_separated(int n, double K_min, double K_max, int ell);

struct CensusEntry {
  std::vector<CriticalPointRecord> boundary_points;
  std::vector<CriticalPointRecord> interior_points;
  double level = 0.0;
  int index = 0;
  int mass = 0;
};

double census_level(int n, const std::vector<double>& K_boundary, const std::vector<double>& K_interior);
int census_index(int n, const std::vector<int>& morse_boundary, const std::vector<int>& morse_interior);

std::vector<CriticalPointRecord> admissible_boundary_points(const ClassifiedSets& sets, int n);
std::vector<CensusEntry> enumerate_census(const ClassifiedSets& sets, int n, int mass_max);

int homology_contribution(const CensusEntry& entry);

struct CountingA {
  long A1 = 0, A2 = 0, A3 = 0, A4 = 0;
  int evens = 0, odds = 0;
};
struct CountingB {
  long B1 = 0, B2 = 0;
  int evens = 0, odds = 0;
};
CountingA counting_A(const std::vector<int>& indices);
CountingB counting_B(const std::vector<int>& indices);

// Sum of (-1)^index over entries below level; the level must sit in a gap between separated bands.
int chi_below(const std::vector<CensusEntry>& census, double level, const std::vector<LevelBand>& bands);

enum class Theorem { T1_1, T1_2, T1_3 };
std::string to_string(Theorem t);

struct ExistenceVerdict {
  Theorem theorem = Theorem::T1_2;
  std::map<std::string, bool> hypotheses;
  std::map<std::string, double> values;
  bool solution_exists = false;
  std::string conclusion() const { return solution_exists ? "solution_exists" : "inconclusive"; }
};

struct ExistenceReport {
  double K_min = 0.0, K_max = 0.0, pinch = 0.0;
  AssumptionReport assumptions;
  std::vector<CriticalPointRecord> records;
  ClassifiedSets sets;
  std::vector<ExistenceVerdict> verdicts;  // in evaluation order
  // Index into verdicts of the first theorem that concludes, or -1.
  int strongest = -1;
};

struct ExistenceOptions {
  int grid_density = 20;
  LandscapeOptions landscape;
  bool strict = false;  // throw AssumptionViolation when the H-assumptions of the selected theorem fail
};

double pinch_threshold(Theorem t, int n);
ExistenceVerdict evaluate_theorem(Theorem t, const ExistenceReport& data, int n);
// which: empty for auto (T1.2, then T1.3, then T1.1).
ExistenceReport existence_check(const ScalarField& K, const std::vector<Theorem>& which = {},
                                const ExistenceOptions& opt = {});

}  // namespace nirenberg
