#include "nirenberg/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nirenberg/errors.hpp"

namespace nirenberg {

std::string to_string(CriticalKind k) { return k == CriticalKind::InteriorOfK ? "interior_of_K" : "boundary_of_K1"; }

std::string to_string(Classification c) {
  switch (c) {
    case Classification::KInMinus: return "K_in_minus";
    case Classification::KBPlus: return "K_b_plus";
    case Classification::KB0Minus: return "K_b_0_minus";
    default: return "other";
  }
}

namespace {

constexpr double kEquatorTol = 1e-9;

struct Problem {
  bool boundary;
  const ScalarField& K;
  Vec grad(const Vec& p) const { return boundary ? K.boundary_gradient(p) : K.tangent_gradient(p); }
  Mat hess(const Vec& p) const { return boundary ? K.boundary_hessian(p) : K.tangent_hessian(p); }
  Mat basis(const Vec& p) const { return boundary ? equator_tangent_basis(p) : sphere_tangent_basis(p); }
  Vec retract(const Vec& p) const {
    Vec x = p;
    if (boundary) x[x.size() - 1] = 0.0;
    return x / x.norm();
  }
};

bool newton(const Problem& pr, Vec& p, int max_iter = 100) {
  for (int it = 0; it < max_iter; ++it) {
    const Mat B = pr.basis(p);
    const Vec g = B.transpose() * pr.grad(p);
    if (g.norm() < 1e-13) return true;
    const Mat H = B.transpose() * pr.hess(p) * B;
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    Vec ev = es.eigenvalues();
    if (ev.cwiseAbs().minCoeff() < 1e-14) return false;
    Vec s = -es.eigenvectors() * (es.eigenvectors().transpose() * g).cwiseQuotient(ev);
    const double sn = s.norm();
    if (sn > 0.5) s *= 0.5 / sn;
    p = pr.retract(p + B * s);
  }
  return pr.grad(p).norm() < 1e-11;
}

std::vector<Vec> seeds(int dim, bool boundary, const LandscapeOptions& opt) {
  const int intrinsic = boundary ? dim - 1 : dim;
  const double count = std::min(std::pow(static_cast<double>(opt.seeds_per_dim), intrinsic), double(opt.seed_cap));
  std::mt19937_64 rng(opt.seed + (boundary ? 1 : 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vec> out;
  for (int k = 0; k <= dim; ++k) {
    if (boundary && k == dim) continue;
    out.push_back(Vec::Unit(dim + 1, k));
    if (k < dim) out.push_back(-Vec::Unit(dim + 1, k));
  }
  for (long s = 0; s < static_cast<long>(count); ++s) {
    Vec x(dim + 1);
    for (int k = 0; k <= dim; ++k) x[k] = normal(rng);
    if (boundary)
      x[dim] = 0.0;
    else
      x[dim] = std::abs(x[dim]);
    out.push_back(x / x.norm());
  }
  return out;
}

}  // namespace

std::vector<CriticalPointRecord> find_critical_points(const ScalarField& K, const LandscapeOptions& opt) {
  if (opt.seeds_per_dim < 8) throw ConfigError("seeds_per_dim must be at least 8");
  const int n = K.dim();
  std::vector<CriticalPointRecord> records;
  for (bool boundary : {false, true}) {
    Problem pr{boundary, K};
    std::vector<Vec> roots;
    for (Vec p : seeds(n, boundary, opt)) {
      const Vec p0 = p;
      if (!newton(pr, p)) {
        // A vanishing Hessian at a vanishing gradient is a degenerate root, not a failure.
        if (pr.grad(p0).norm() < 1e-13) p = p0;
        else continue;
      }
      if (pr.grad(p).norm() > 1e-11) continue;
      if (p[n] < -kEquatorTol) continue;
      if (p[n] < 0.0) p[n] = 0.0;
      p /= p.norm();
      bool dup = false;
      for (const auto& r : roots)
        if (geodesic_distance(r, p) < 1e-6) {
          dup = true;
          break;
        }
      if (!dup) roots.push_back(p);
      if (roots.size() > 10000) throw DegenerateCriticalPoint("critical set is not discrete");
    }
    for (const Vec& p : roots) {
      CriticalPointRecord r;
      r.location = p;
      r.kind = boundary ? CriticalKind::BoundaryOfK1 : CriticalKind::InteriorOfK;
      const Mat B = pr.basis(p);
      const Mat H = B.transpose() * pr.hess(p) * B;
      Eigen::SelfAdjointEigenSolver<Mat> es(H);
      const Vec ev = es.eigenvalues();
      r.morse_index = static_cast<int>((ev.array() < 0.0).count());
      r.min_abs_eigenvalue = ev.cwiseAbs().minCoeff();
      r.nondegenerate = r.min_abs_eigenvalue >= opt.degenerate_tol;
      r.value = K.value(p);
      r.laplacian = K.laplace_beltrami(p);
      r.on_equator = std::abs(p[n]) <= kEquatorTol;
      r.normal_derivative = (boundary || r.on_equator) ? K.normal_derivative(p) : 0.0;
      r.gradient_norm = pr.grad(p).norm();
      if (!r.nondegenerate && opt.throw_on_degenerate)
        throw DegenerateCriticalPoint("Hessian eigenvalue " + std::to_string(r.min_abs_eigenvalue) + " below tolerance");
      records.push_back(r);
    }
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    for (int k = 0; k < a.location.size(); ++k)
      if (a.location[k] != b.location[k]) return a.location[k] < b.location[k];
    return false;
  });
  for (auto& r : records) r.classification = classify_record(r, opt.zero_tol);
  return records;
}

Classification classify_record(const CriticalPointRecord& r, double zero_tol) {
  if (r.kind == CriticalKind::InteriorOfK) {
    if (!r.on_equator && r.laplacian < 0.0) return Classification::KInMinus;
    return Classification::Other;
  }
  const double nu = r.normal_derivative;
  if (std::abs(nu) >= zero_tol && std::abs(nu) < 10.0 * zero_tol)
    throw AmbiguousSign("dK/dnu = " + std::to_string(nu) + " lies in the dead band");
  if (nu >= 10.0 * zero_tol) return Classification::KBPlus;
  if (std::abs(nu) < zero_tol && r.laplacian < 0.0) return Classification::KB0Minus;
  return Classification::Other;
}

ClassifiedSets classify(std::vector<CriticalPointRecord>& records, double zero_tol) {
  ClassifiedSets out;
  for (auto& r : records) {
    r.classification = classify_record(r, zero_tol);
    switch (r.classification) {
      case Classification::KInMinus: out.K_in_minus.push_back(r); break;
      case Classification::KBPlus: out.K_b_plus.push_back(r); break;
      case Classification::KB0Minus: out.K_b_0_minus.push_back(r); break;
      default: break;
    }
  }
  for (const auto* s : {&out.K_in_minus, &out.K_b_plus, &out.K_b_0_minus})
    out.K_infinity.insert(out.K_infinity.end(), s->begin(), s->end());
  return out;
}

double h3_ratio(const ScalarField& K, const Vec& z, double r, int directions, unsigned long seed) {
  const Mat B = equator_tangent_basis(z);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < directions; ++k) {
    Vec c(B.cols());
    for (int j = 0; j < c.size(); ++j) c[j] = normal(rng);
    const Vec a = sphere_exp(z, r * (B * c.normalized()));
    worst = std::max(worst, std::abs(K.normal_derivative(a)) / geodesic_distance(a, z));
  }
  return worst;
}

AssumptionReport check_assumptions(const std::vector<CriticalPointRecord>& records, const ScalarField& K,
                                   const LandscapeOptions& opt) {
  AssumptionReport rep;
  const int n = K.dim();
  auto loc = [](const Vec& v) {
    std::string s = "(";
    for (int k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
  };
  for (const auto& r : records) {
    if (r.kind == CriticalKind::InteriorOfK) {
      if (!r.nondegenerate || std::abs(r.laplacian) <= opt.zero_tol) {
        rep.H1 = false;
        rep.violations.push_back("H1: critical point of K at " + loc(r.location) + " is degenerate or has Delta K = 0");
      }
      continue;
    }
    if (!r.nondegenerate) {
      rep.H2 = false;
      rep.violations.push_back("H2: degenerate critical point of K1 at " + loc(r.location));
    }
    const bool local_max = r.morse_index == n - 1;
    if (!local_max && r.normal_derivative > opt.zero_tol) {
      rep.H2 = false;
      rep.violations.push_back("H2: non-maximum critical point of K1 at " + loc(r.location) + " has dK/dnu > 0");
    }
    if (std::abs(r.normal_derivative) < opt.zero_tol) {
      AssumptionReport::H3Check chk;
      chk.z = r.location;
      if (std::abs(r.laplacian) <= opt.zero_tol) {
        rep.H3 = false;
        rep.violations.push_back("H3: Delta K = 0 at " + loc(r.location));
        rep.H3_checks.push_back(chk);
        continue;
      }
      // Branch (i): sign of dK/dnu(a) * Delta K(z) on a small equatorial ball.
      const Mat B = equator_tangent_basis(r.location);
      std::mt19937_64 rng(opt.seed + 11);
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      chk.branch_i = true;
      for (int s = 0; s < 2000 && chk.branch_i; ++s) {
        Vec c(B.cols());
        for (int j = 0; j < c.size(); ++j) c[j] = normal(rng);
        const double rad = 0.05 * std::pow(unif(rng), 1.0 / c.size());
        const Vec a = sphere_exp(r.location, rad * (B * c.normalized()));
        if (K.normal_derivative(a) * r.laplacian > 0.0) chk.branch_i = false;
      }
      // Branch (ii): ratio sequence along halving radii r0 2^{-k}, k <= 10.
      const double r0 = 0.05;
      chk.ratio_first = h3_ratio(K, r.location, r0);
      chk.ratio_last = h3_ratio(K, r.location, r0 * std::pow(2.0, -10));
      chk.branch_ii = chk.ratio_first == 0.0 || chk.ratio_last <= 0.01 * chk.ratio_first;
      if (!chk.branch_i && !chk.branch_ii) {
        rep.H3 = false;
        rep.violations.push_back("H3: neither branch holds at " + loc(r.location));
      }
      rep.H3_checks.push_back(chk);
    }
  }
  return rep;
}

}  // namespace nirenberg
