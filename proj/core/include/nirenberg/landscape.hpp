#pragma once

#include <string>
#include <vector>

#include "nirenberg/field.hpp"

namespace nirenberg {

enum class CriticalKind { InteriorOfK, BoundaryOfK1 };
enum class Classification { KInMinus, KBPlus, KB0Minus, Other };

std::string to_string(CriticalKind k);
std::string to_string(Classification c);

struct CriticalPointRecord {
  Vec location;
  CriticalKind kind = CriticalKind::InteriorOfK;
  int morse_index = 0;
  double value = 0.0;
  double laplacian = 0.0;
  double normal_derivative = 0.0;  // boundary records only
  double gradient_norm = 0.0;
  double min_abs_eigenvalue = 0.0;
  bool nondegenerate = true;
  bool on_equator = false;
  Classification classification = Classification::Other;
};

struct LandscapeOptions {
  int seeds_per_dim = 8;
  int seed_cap = 20000;
  unsigned long seed = 20240601;
  bool throw_on_degenerate = true;
  double degenerate_tol = 1e-8;
  double zero_tol = 1e-9;  // dead band for dK/dnu
};

std::vector<CriticalPointRecord> find_critical_points(const ScalarField& K, const LandscapeOptions& opt = {});

struct AssumptionReport {
  bool H1 = true;
  bool H2 = true;
  bool H3 = true;
  struct H3Check {
    Vec z;
    bool branch_i = false;
    bool branch_ii = false;
    double ratio_first = 0.0;
    double ratio_last = 0.0;
  };
  // One entry per boundary critical point with dK/dnu = 0.
  std::vector<H3Check> H3_checks;
  std::vector<std::string> violations;
};

AssumptionReport check_assumptions(const std::vector<CriticalPointRecord>& records, const ScalarField& K,
                                   const LandscapeOptions& opt = {});

struct ClassifiedSets {
  std::vector<CriticalPointRecord> K_in_minus;
  std::vector<CriticalPointRecord> K_b_plus;
  std::vector<CriticalPointRecord> K_b_0_minus;
  std::vector<CriticalPointRecord> K_infinity;
};

// Fills the classification field of each record and returns the partition.
ClassifiedSets classify(std::vector<CriticalPointRecord>& records, double zero_tol = 1e-9);
Classification classify_record(const CriticalPointRecord& r, double zero_tol = 1e-9);

// Sampled H3(ii) ratio max |dK/dnu(a)| / d(a, z) over directions at radius r.
double h3_ratio(const ScalarField& K, const Vec& z, double r, int directions = 32, unsigned long seed = 7);

}  // namespace nirenberg
