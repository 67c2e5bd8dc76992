#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nirenberg {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// R(a, b) = int_0^inf r^a (1 + r^2)^{-b} dr by adaptive Gauss-Kronrod.
QuadResult radial_moment(double a, double b, double tol, bool high_order = true);
// 0.5 * B((a+1)/2, b-(a+1)/2).
double radial_moment_closed(double a, double b);

double sphere_area(int dim);  // |S^dim|

struct ConstantEntry {
  double value = 0.0;
  double error = 0.0;
  std::optional<double> closed_form;
};

struct ConstantsTable {
  int n = 0;
  double tol = 0.0;
  ConstantEntry c0, S_n, c2, c3, c4, c5, c6, c7, c9, c_in;
  // Half-sphere first angular moment |S^{n-2}|/(n-1) and full |S^{n-1}|.
  double half_moment = 0.0;
  double omega = 0.0;
  std::string version() const;
  std::vector<std::pair<std::string, ConstantEntry>> entries() const;
};

ConstantsTable compute_constants(int n, double tol = 1e-8, bool high_order = true);
// Cached table at the default tolerance; thread-safe.
const ConstantsTable& default_constants(int n);

double c2_interaction_constant(int n, double tol = 1e-8);

}  // namespace nirenberg
