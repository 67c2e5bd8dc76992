#pragma once

#include <vector>

#include "nirenberg/landscape.hpp"
#include "nirenberg/reduced_model.hpp"

namespace nirenberg {

// Boundary points admissible as blow-up points: local maxima of K1 with dK/dnu > 0,
// or dK/dnu = 0 with Delta K < 0.
bool is_admissible_boundary(const CriticalPointRecord& r, int n);

struct WMatch {
  std::vector<int> index;  // matched record per bubble, into the admissible lists below
  std::vector<CriticalPointRecord> points;
};

// Throws NotInWSet unless every bubble is within eta of a distinct admissible point of its type.
WMatch match_w_set(const Configuration& cfg, const ClassifiedSets& sets, double eta);

struct NormalFormTerms {
  double level = 0.0;        // C_infinity of the matched collection
  double alpha_sq = 0.0;     // ||alpha||^2
  double a_minus_sq = 0.0;   // sum |A_i^-|^2
  double a_plus_sq = 0.0;    // sum |A_i^+|^2
  double lambda_terms = 0.0;
  Interval value;
};

NormalFormTerms reduced_J_normal_form(const Configuration& cfg, const ScalarField& K, const ClassifiedSets& sets,
                                      double eta = 0.1, const ModelOptions& opt = {});

}  // namespace nirenberg
