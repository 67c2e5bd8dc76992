#include "nirenberg/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "nirenberg/errors.hpp"

namespace nirenberg {

namespace {
constexpr double kUnitTol = 1e-12;
constexpr double kPoleTol = 1e-10;
}  // namespace

SpherePoint::SpherePoint(Vec coords) : x_(std::move(coords)) {
  if (x_.size() < 2) throw InvalidPoint("need at least two ambient coordinates");
  if (!x_.allFinite()) throw InvalidPoint("non-finite coordinates");
  if (std::abs(x_.norm() - 1.0) > kUnitTol) throw InvalidPoint("point is not on the unit sphere");
  if (height() < -kUnitTol) throw InvalidPoint("point lies below the equator");
}

SpherePoint SpherePoint::normalized(const Vec& v) {
  Vec x = v;
  if (x[x.size() - 1] < 0.0 && x[x.size() - 1] > -1e-9) x[x.size() - 1] = 0.0;
  double r = x.norm();
  if (!(r > 0.0)) throw InvalidPoint("zero vector");
  return SpherePoint(x / r);
}

BoundarySpherePoint::BoundarySpherePoint(Vec coords) : SpherePoint(std::move(coords)) {
  if (!on_boundary(kUnitTol)) throw InvalidPoint("point is not on the equator");
}

HalfSpacePoint::HalfSpacePoint(Vec coords) : x_(std::move(coords)) {
  if (x_.size() < 1 || !x_.allFinite()) throw InvalidPoint("bad half-space coordinates");
  if (height() < -kUnitTol) throw InvalidPoint("point lies below the boundary hyperplane");
}

double geodesic_distance(const Vec& p, const Vec& q) {
  // acos loses accuracy near 0 and pi; the chord formula does not.
  double chord = (p - q).norm();
  double s = std::clamp(0.5 * chord, 0.0, 1.0);
  return 2.0 * std::asin(s);
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  return geodesic_distance(p.coords(), q.coords());
}

double boundary_distance(const SpherePoint& p) {
  return std::asin(std::clamp(p.height(), 0.0, 1.0));
}

Mat tangent_projector(const Vec& p) {
  const auto m = p.size();
  return Mat::Identity(m, m) - p * p.transpose();
}

Mat boundary_tangent_projector(const Vec& z) {
  const auto m = z.size();
  Mat P = tangent_projector(z);
  P.row(m - 1).setZero();
  P.col(m - 1).setZero();
  return P;
}

Mat complement_basis(const Mat& span) {
  const auto m = span.rows();
  const auto k = span.cols();
  Eigen::HouseholderQR<Mat> qr(span);
  Mat Q = qr.householderQ() * Mat::Identity(m, m);
  return Q.rightCols(m - k);
}

Vec sphere_exp(const Vec& p, const Vec& v) {
  double t = v.norm();
  if (t < 1e-300) return p;
  return std::cos(t) * p + std::sin(t) * (v / t);
}

Vec sphere_log(const Vec& p, const Vec& q) {
  Vec w = q - q.dot(p) * p;
  double s = w.norm();
  double d = geodesic_distance(p, q);
  if (s < 1e-300) return Vec::Zero(p.size());
  return (d / s) * w;
}

Vec mirror(const Vec& p) {
  Vec r = p;
  r[r.size() - 1] = -r[r.size() - 1];
  return r;
}

HalfSpacePoint stereographic_to_halfspace(const SpherePoint& p) {
  const Vec& c = p.coords();
  const auto n = c.size() - 1;
  double den = 1.0 + c[0];
  if ((c + Vec::Unit(c.size(), 0)).norm() < kPoleTol) throw PoleSingularity("point coincides with the projection pole -e1");
  Vec x = c.tail(n) / den;
  if (x[n - 1] < 0.0) x[n - 1] = 0.0;
  return HalfSpacePoint(x);
}

SpherePoint halfspace_to_sphere(const HalfSpacePoint& hx) {
  const Vec& x = hx.coords();
  const auto n = x.size();
  double r2 = x.squaredNorm();
  Vec c(n + 1);
  c[0] = (1.0 - r2) / (1.0 + r2);
  c.tail(n) = 2.0 * x / (1.0 + r2);
  return SpherePoint::normalized(c);
}

double stereographic_factor(const HalfSpacePoint& x) { return 2.0 / (1.0 + x.coords().squaredNorm()); }

}  // namespace nirenberg
