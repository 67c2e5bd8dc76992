#pragma once

#include <Eigen/Dense>

namespace nirenberg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Point of the closed upper hemisphere in R^{n+1}; the last coordinate is the height.
class SpherePoint {
 public:
  explicit SpherePoint(Vec coords);
  // Normalizes and lifts a slightly negative height to the equator.
  static SpherePoint normalized(const Vec& v);

  const Vec& coords() const { return x_; }
  double operator[](int i) const { return x_[i]; }
  int dim() const { return static_cast<int>(x_.size()) - 1; }
  double height() const { return x_[x_.size() - 1]; }
  bool on_boundary(double tol = 1e-12) const { return std::abs(height()) <= tol; }

 private:
  Vec x_;
};

class BoundarySpherePoint : public SpherePoint {
 public:
  explicit BoundarySpherePoint(Vec coords);
  explicit BoundarySpherePoint(const SpherePoint& p) : BoundarySpherePoint(p.coords()) {}
};

class HalfSpacePoint {
 public:
  explicit HalfSpacePoint(Vec coords);
  const Vec& coords() const { return x_; }
  int dim() const { return static_cast<int>(x_.size()); }
  double height() const { return x_[x_.size() - 1]; }

 private:
  Vec x_;
};

double geodesic_distance(const SpherePoint& p, const SpherePoint& q);
double geodesic_distance(const Vec& p, const Vec& q);
// Geodesic distance to the equator.
double boundary_distance(const SpherePoint& p);

Mat tangent_projector(const Vec& p);
// Projector onto the tangent space of the equator sphere at a boundary point.
Mat boundary_tangent_projector(const Vec& z);
// Orthonormal basis (columns) of the orthogonal complement of the given columns.
Mat complement_basis(const Mat& span);

// exp_p(v) for a tangent vector v.
Vec sphere_exp(const Vec& p, const Vec& v);
// Inverse of sphere_exp, defined away from the antipode.
Vec sphere_log(const Vec& p, const Vec& q);

// Reflection through the equator.
Vec mirror(const Vec& p);

HalfSpacePoint stereographic_to_halfspace(const SpherePoint& p);
SpherePoint halfspace_to_sphere(const HalfSpacePoint& x);
// Conformal factor w with g_sphere = w^2 g_flat in the chart.
double stereographic_factor(const HalfSpacePoint& x);

}  // namespace nirenberg
