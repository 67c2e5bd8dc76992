#pragma once

#include <vector>

#include "nirenberg/bubbles.hpp"
#include "nirenberg/field.hpp"
#include "nirenberg/interval.hpp"
#include "nirenberg/quadrature.hpp"

namespace nirenberg {

// q boundary bubbles (indices 0..q-1, centred on the equator) followed by p interior ones.
struct Configuration {
  int q = 0;
  int p = 0;
  std::vector<double> alpha;
  std::vector<BubbleParam> bubbles;
  double eps = 0.1;

  int size() const { return q + p; }
  int mass() const { return q + 2 * p; }
  int dim() const { return bubbles.empty() ? 0 : bubbles.front().dim(); }
  bool is_boundary(int i) const { return i < q; }
  double weight(int i) const { return i < q ? 1.0 : 2.0; }
};

struct ModelOptions {
  double sep_c = 0.1;        // separation below which the error bar is widened
  double alpha_slack = 0.05;
  double vbar_c = 1.0;       // constant of the v-bar budget
  double remainder_c = 1.0;  // multiplies every O(.) term of the error bars
};

// Throws InvalidConfiguration when the neighbourhood invariants fail.
void validate(const Configuration& cfg, bool check_alpha_balance = false, const ScalarField* K = nullptr,
              const ModelOptions& opt = {});

// Quantities shared by every expansion.
struct ModelState {
  int n = 0;
  double norm0 = 0.0;  // S_n sum w alpha^2, square root
  double J0 = 0.0;     // leading level
  double Jpow = 0.0;   // J0^{n/(n-2)}
  std::vector<double> ahat;
  std::vector<double> K;
  std::vector<double> omega;  // J0^{n/(n-2)} ahat^{2n/(n-2)}
  std::vector<double> beta;   // J0^{n/(n-2)} ahat^{4/(n-2)} K(a_i)
  Mat eps;
};

ModelState model_state(const Configuration& cfg, const ScalarField& K, const ConstantsTable& ct);

Interval reduced_J(const Configuration& cfg, const ScalarField& K, const ModelOptions& opt = {});
Interval reduced_J(const Configuration& cfg, const ScalarField& K, const ConstantsTable& ct, const ModelOptions& opt);

Interval grad_alpha(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt = {});
Interval grad_lambda_boundary(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt = {});
Interval grad_lambda_interior(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt = {});
Interval grad_lambda(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt = {});

struct TangentGradient {
  Vec value;              // ambient vector tangent to the admissible set of a_i
  double halfwidth = 0.0; // bound on the Euclidean norm of the error
  Vec normal;             // boundary bubbles: pairing with the inward normal direction
};
TangentGradient grad_a(const Configuration& cfg, const ScalarField& K, int i, const ModelOptions& opt = {});

struct GradientComponents {
  std::vector<Interval> alpha;
  std::vector<Interval> lambda;
  std::vector<TangentGradient> a;
  Mat eps;
  double R1 = 0.0;
  double R1b = 0.0;
};
GradientComponents gradient_components(const Configuration& cfg, const ScalarField& K, const ModelOptions& opt = {});

double remainder_R1(const Configuration& cfg, const ScalarField& K);
double remainder_R1b(const Configuration& cfg, const ScalarField& K);

Configuration normalize_alphas(const Configuration& cfg, const ScalarField& K);
// max_i |1 - J^{n/(n-2)} alpha_i^{4/(n-2)} K(a_i)| at the leading level.
double alpha_imbalance(const Configuration& cfg, const ScalarField& K);

double vbar_budget(const Configuration& cfg, const ScalarField& K, double c = 1.0);

// Tangent vector of the admissible set for bubble i (equator tangent for boundary bubbles).
Vec admissible_tangent(const Configuration& cfg, int i, const Vec& v);
// Moves a_i along the admissible set by the tangent vector v.
Configuration move_point(const Configuration& cfg, int i, const Vec& v);

}  // namespace nirenberg
