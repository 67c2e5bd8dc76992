#pragma once

#include "nirenberg/geometry.hpp"

namespace nirenberg {

double bubble_c0(int n);

struct BubbleParam {
  Vec a;  // point of the closed upper hemisphere
  double lambda = 1.0;
  BubbleParam() = default;
  BubbleParam(const SpherePoint& p, double lam);
  BubbleParam(Vec point, double lam);
  int dim() const { return static_cast<int>(a.size()) - 1; }
  double boundary_distance() const;
};

double delta(const BubbleParam& b, const Vec& x);
double delta(const BubbleParam& b, const SpherePoint& x);

// Flat bubble c0 mu^{(n-2)/2} (1 + mu^2 |x-b|^2)^{-(n-2)/2} on R^n.
double flat_bubble(int n, const Vec& center, double mu, const Vec& x);

// Image of a sphere bubble in the half-space chart: the pullback equals
// ((1+|x|^2)/2)^{(n-2)/2} times flat_bubble(center, mu).
struct ChartBubble {
  Vec center;
  double mu = 1.0;
};
ChartBubble chart_bubble(const BubbleParam& b);

// Half-space regular part |x - mirror(a)|^{2-n}.
double halfspace_H(const Vec& a, const Vec& x);
// Chordal regular part on the sphere |a - mirror(b)|^{2-n}; symmetric.
double sphere_H(const Vec& a, const Vec& b);

// Two-term expansion of the projected bubble in the half-space chart.
class PhiApprox {
 public:
  PhiApprox(const BubbleParam& b, double budget_constant = -1.0);
  const ChartBubble& chart() const { return chart_; }
  double chart_delta(const Vec& x) const;
  double chart_value(const Vec& x) const;
  // Uniform bound on the chart remainder |f|.
  double chart_budget() const { return budget_; }
  double sphere_delta(const Vec& y) const;
  double sphere_value(const Vec& y) const;
  double sphere_budget(const Vec& y) const;

 private:
  int n_;
  ChartBubble chart_;
  double budget_;
};

double epsilon(const BubbleParam& bi, const BubbleParam& bj);

struct EpsilonLambdaDerivs {
  double di = 0.0;  // lambda_i d eps / d lambda_i
  double dj = 0.0;  // lambda_j d eps / d lambda_j
};
EpsilonLambdaDerivs epsilon_dlambda(const BubbleParam& bi, const BubbleParam& bj);

// Ambient gradient of eps_ij in a_i: (n-2) l_i l_j (a_j - a_i) eps^{n/(n-2)}.
Vec epsilon_da(const BubbleParam& bi, const BubbleParam& bj);

struct InteractionMatrix {
  Mat eps;
};

}  // namespace nirenberg
