#pragma once

#include <map>
#include <string>
#include <vector>

#include "nirenberg/interval.hpp"
#include "nirenberg/landscape.hpp"
#include "nirenberg/reduced_model.hpp"

namespace nirenberg {

struct FlowParams {
  double M0 = 1e4;
  double M2 = 10.0;
  double M4 = 1e3;
  double eta = 0.1;      // critical-point neighbourhood radius
  double M_gate = 10.0;  // gate constant of the single boundary field
  double m1 = 0.01;
  double psi_lo = 1.0;   // psi1 vanishes below, equals one above psi_hi
  double psi_hi = 2.0;
  double zero_tol = 1e-9;

  double dt0 = 1e-2;
  double dt_min = 1e-9;
  double dt_max = 0.25;
  double rtol = 1e-3;
  double monotone_tol = 1e-8;  // allowed J increase per unit time
  double stagnation = 1e-10;
  int max_rejections = 10;
  int max_steps = 20000;
  double certificate_c = 0.1;
  ModelOptions model;

  // Violated smallness conditions for the given dimension and bubble count (empty when fine).
  std::vector<std::string> check(int n, int bubbles) const;
};

// Quintic smoothstep: 0 for t <= lo, 1 for t >= hi.
double psi1(double t, double lo = 1.0, double hi = 2.0);

// Critical points of K (interior) and K_1 (boundary) the flow refers to.
struct FlowLandscape {
  std::vector<CriticalPointRecord> interior;
  std::vector<CriticalPointRecord> boundary;
  static FlowLandscape from_records(const std::vector<CriticalPointRecord>& records);
  static FlowLandscape compute(const ScalarField& K, const LandscapeOptions& opt = {});
};

double mu(const Configuration& cfg, const ScalarField& K, int i);

struct GammaQuantities {
  double alpha = 0.0;   // boundary indices only
  double a = 0.0;       // Gamma^b_a for boundary indices
  double H = 0.0;       // interior indices only
  double lambda = 0.0;
};
GammaQuantities gamma_quantities(const Configuration& cfg, const ScalarField& K, int i, const FlowParams& params);

enum class Region { V1, V2, V3_1, V3_2, V3_3, W, V4, Mixed };
std::string to_string(Region r);

struct RegionLabel {
  Region tag = Region::Mixed;
  std::map<Region, double> weights;  // partition of unity over the pure regions
  std::vector<double> mu;
  std::vector<GammaQuantities> gamma;
  // Index of the nearest critical point (into FlowLandscape::boundary or ::interior) within 2 eta, or -1.
  std::vector<int> cluster;
  std::vector<int> I;  // V4 lower block, original indices
  int i0 = -1;         // V4: first rank (ascending mu) of an interior index with large Gamma sum
  int j0 = -1;         // V4: same for boundary indices
  double weight(Region r) const;
};

// Throws OutsideNeighborhood when cfg is not a valid neighbourhood state.
RegionLabel classify_region(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land,
                            const FlowParams& params);

// Field in bubble units: alpha_i delta_i gets coefficient alpha, lambda_i d/dlambda_i gets lambda,
// (1/lambda_i) d/da_i . e gets a.
struct BubbleField {
  std::vector<double> alpha;
  std::vector<double> lambda;
  std::vector<Vec> a;
  static BubbleField zero(const Configuration& cfg);
  void add(const BubbleField& o, double w);
};

struct Velocity {
  std::vector<double> alpha_dot;
  std::vector<double> lambda_dot;
  std::vector<Vec> a_dot;
  double norm() const;
};

Velocity to_velocity(const Configuration& cfg, const BubbleField& f);

BubbleField pseudogradient_field(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land,
                                 const FlowParams& params, RegionLabel* label = nullptr);
Velocity pseudogradient(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land,
                        const FlowParams& params);

// <-grad J, W> from the reduced-model gradients, with the propagated error bar.
Interval pairing(const Configuration& cfg, const ScalarField& K, const BubbleField& f, const ModelOptions& opt = {});

struct Certificate {
  Interval lhs;
  double aggregate = 0.0;
  double rhs_lower_bound = 0.0;
  bool satisfied = false;
};
Certificate decrease_certificate(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land,
                                 const FlowParams& params);
Certificate decrease_certificate(const Configuration& cfg, const ScalarField& K, const BubbleField& f,
                                 const FlowParams& params);
double decrease_aggregate(const Configuration& cfg, const ScalarField& K);

struct TrajectoryState {
  double t = 0.0;
  Configuration cfg;
  RegionLabel label;
  Interval J;
  Interval descent;  // <-grad J, W> at this state
  std::vector<int> lambda_sign;
  std::vector<double> mu;
  double mu_max() const;
};

struct Trajectory {
  std::vector<TrajectoryState> states;
  std::string termination;  // "t_max", "neighbourhood_exit", "stagnation", "max_steps"
  int rejections = 0;
};

// Throws StepFailure after max_rejections consecutive rejections.
Trajectory integrate_flow(const Configuration& cfg0, const ScalarField& K, const FlowLandscape& land, double T_max,
                          const FlowParams& params);

// Applies the velocity for a time step dt (log coordinates in alpha and lambda, exponential map in a).
Configuration advance(const Configuration& cfg, const Velocity& v, double dt);

}  // namespace nirenberg
