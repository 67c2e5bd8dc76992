#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nirenberg/geometry.hpp"

namespace nirenberg {

struct Monomial {
  // 0-based ambient indices; empty for the constant monomial, size <= 2.
  std::vector<int> vars;
  static Monomial parse(const std::string& text, int ambient_dim);
  std::string str() const;
};

struct FieldTerm {
  Monomial monomial;
  double coeff = 0.0;
};

// K(x) = kappa0 + g.x + x.Q.x restricted to the closed upper hemisphere of S^n.
class ScalarField {
 public:
  ScalarField(int n, double kappa0, std::vector<FieldTerm> terms);
  static ScalarField constant(int n, double kappa0) { return ScalarField(n, kappa0, {}); }

  int dim() const { return n_; }
  double kappa0() const { return kappa_; }
  const std::vector<FieldTerm>& terms() const { return terms_; }
  const Vec& linear() const { return g_; }
  const Mat& quadratic() const { return Q_; }
  // kappa0 minus the sum of |coeff| times the max of |monomial| on the sphere.
  double conservative_lower_bound() const;

  double value(const Vec& p) const;
  Vec ambient_gradient(const Vec& p) const;
  Vec tangent_gradient(const Vec& p) const;
  Mat tangent_hessian(const Vec& p) const;
  double laplace_beltrami(const Vec& p) const;
  // Outward normal is -e_{n+1}.
  double normal_derivative(const Vec& z) const;
  Vec boundary_gradient(const Vec& z) const;
  // Tangent gradients of p -> laplace_beltrami(p) and z -> normal_derivative(z).
  Vec laplacian_gradient(const Vec& p) const;
  Vec normal_derivative_gradient(const Vec& z) const;
  // |g| + 2|Q|, a bound for every derivative of K of order one to three in the chart.
  double derivative_scale() const;
  Mat boundary_hessian(const Vec& z) const;

  double value(const SpherePoint& p) const { return value(p.coords()); }
  ScalarField scaled(double t) const;

 private:
  int n_;
  double kappa_;
  std::vector<FieldTerm> terms_;
  Vec g_;
  Mat Q_;
};

// Hessian restricted to an orthonormal tangent basis (columns of B).
Mat restrict_to_basis(const Mat& H, const Mat& B);
// Orthonormal basis of T_p S^n.
Mat sphere_tangent_basis(const Vec& p);
// Orthonormal basis of T_z of the equator sphere.
Mat equator_tangent_basis(const Vec& z);

struct FieldExtrema {
  double K_min = 0.0;
  double K_max = 0.0;
  Vec argmin;
  Vec argmax;
};

FieldExtrema field_min_max(const ScalarField& K, int grid_density, unsigned long seed = 12345);

}  // namespace nirenberg
