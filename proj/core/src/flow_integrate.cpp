#include <algorithm>
#include <cmath>

#include "nirenberg/errors.hpp"
#include "nirenberg/flow.hpp"
#include "nirenberg/geometry.hpp"

namespace nirenberg {

Interval pairing(const Configuration& cfg, const ScalarField& K, const BubbleField& f, const ModelOptions& opt) {
  const GradientComponents g = gradient_components(cfg, K, opt);
  double dJ = 0.0, hw = 0.0;
  for (int i = 0; i < cfg.size(); ++i) {
    // lambda and a gradients pair with the unit bubble, so the velocity carries a factor alpha_i.
    const double ai = cfg.alpha[i];
    const double ca = f.alpha[i] * ai;
    const Vec e = admissible_tangent(cfg, i, f.a[i]);
    dJ += g.alpha[i].center * ca + ai * (g.lambda[i].center * f.lambda[i] + g.a[i].value.dot(e));
    hw += std::abs(ca) * g.alpha[i].halfwidth +
          ai * (std::abs(f.lambda[i]) * g.lambda[i].halfwidth + e.norm() * g.a[i].halfwidth);
  }
  return {-dJ, hw};
}

double decrease_aggregate(const Configuration& cfg, const ScalarField& K) {
  const int n = cfg.dim();
  const double e2 = 2.0 - 1.0 / (n - 2.0);
  const double ee = (n - 1.0) / (n - 2.0);
  const ModelState st = model_state(cfg, K, default_constants(n));
  double s = 0.0;
  for (int i = 0; i < cfg.size(); ++i) {
    const auto& b = cfg.bubbles[i];
    s += std::pow(mu(cfg, K, i), -e2);
    if (cfg.is_boundary(i)) {
      s += std::pow(std::abs(1.0 - st.beta[i]), e2);
    } else {
      s += std::pow(b.lambda * b.boundary_distance(), 1.0 - n);
      s += std::pow(K.tangent_gradient(b.a).norm() / b.lambda, e2);
    }
    for (int j = 0; j < cfg.size(); ++j)
      if (j != i) s += std::pow(st.eps(i, j), ee);
  }
  return s;
}

Certificate decrease_certificate(const Configuration& cfg, const ScalarField& K, const BubbleField& f,
                                 const FlowParams& params) {
  Certificate c;
  c.lhs = pairing(cfg, K, f, params.model);
  c.aggregate = decrease_aggregate(cfg, K);
  c.rhs_lower_bound = params.certificate_c * c.aggregate;
  c.satisfied = c.lhs.lo() >= c.rhs_lower_bound;
  return c;
}

Certificate decrease_certificate(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land,
                                 const FlowParams& params) {
  return decrease_certificate(cfg, K, pseudogradient_field(cfg, K, land, params), params);
}

double TrajectoryState::mu_max() const { return mu.empty() ? 0.0 : *std::max_element(mu.begin(), mu.end()); }

Configuration advance(const Configuration& cfg, const Velocity& v, double dt) {
  Configuration out = cfg;
  for (int i = 0; i < cfg.size(); ++i) {
    out.alpha[i] = cfg.alpha[i] * std::exp(v.alpha_dot[i] / cfg.alpha[i] * dt);
    out.bubbles[i].lambda = cfg.bubbles[i].lambda * std::exp(v.lambda_dot[i] / cfg.bubbles[i].lambda * dt);
    if (v.a_dot[i].norm() > 0.0) {
      const Configuration moved = move_point(cfg, i, v.a_dot[i] * dt);
      out.bubbles[i].a = moved.bubbles[i].a;
    }
  }
  return out;
}

namespace {

struct Eval {
  RegionLabel label;
  BubbleField field;
  Velocity velocity;
};

Eval evaluate(const Configuration& cfg, const ScalarField& K, const FlowLandscape& land, const FlowParams& P) {
  Eval e;
  e.field = pseudogradient_field(cfg, K, land, P, &e.label);
  e.velocity = to_velocity(cfg, e.field);
  return e;
}

TrajectoryState record(double t, const Configuration& cfg, const Eval& e, const ScalarField& K,
                       const FlowParams& P) {
  TrajectoryState s;
  s.t = t;
  s.cfg = cfg;
  s.label = e.label;
  s.J = reduced_J(cfg, K, P.model);
  s.descent = pairing(cfg, K, e.field, P.model);
  for (double l : e.velocity.lambda_dot) s.lambda_sign.push_back(l > 0.0 ? 1 : (l < 0.0 ? -1 : 0));
  s.mu = e.label.mu;
  return s;
}

bool valid(const Configuration& cfg) {
  try {
    validate(cfg);
    return true;
  } catch (const InvalidConfiguration&) {
    return false;
  }
}

}  // namespace

Trajectory integrate_flow(const Configuration& cfg0, const ScalarField& K, const FlowLandscape& land, double T_max,
                          const FlowParams& P) {
  Trajectory tr;
  Configuration x = cfg0;
  Eval ex = evaluate(x, K, land, P);
  tr.states.push_back(record(0.0, x, ex, K, P));
  double t = 0.0;
  double dt = std::min(P.dt0, T_max);
  int consecutive = 0;
  int steps = 0;
  tr.termination = "t_max";
  while (t < T_max - 1e-12) {
    if (++steps > P.max_steps) {
      tr.termination = "max_steps";
      break;
    }
    if (ex.velocity.norm() < P.stagnation) {
      tr.termination = "stagnation";
      break;
    }
    dt = std::min(dt, T_max - t);
    const Configuration x1 = advance(x, ex.velocity, dt);
    bool exited = !valid(x1);
    Eval e1;
    Configuration x2;
    if (!exited) {
      try {
        e1 = evaluate(x1, K, land, P);
        Velocity mid = ex.velocity;
        for (int i = 0; i < x.size(); ++i) {
          mid.alpha_dot[i] = 0.5 * (ex.velocity.alpha_dot[i] + e1.velocity.alpha_dot[i] * x.alpha[i] / x1.alpha[i]);
          mid.lambda_dot[i] = 0.5 * (ex.velocity.lambda_dot[i] +
                                     e1.velocity.lambda_dot[i] * x.bubbles[i].lambda / x1.bubbles[i].lambda);
          mid.a_dot[i] = 0.5 * (ex.velocity.a_dot[i] +
                                e1.velocity.a_dot[i] * x1.bubbles[i].lambda / x.bubbles[i].lambda);
        }
        x2 = advance(x, mid, dt);
        exited = !valid(x2);
      } catch (const OutsideNeighborhood&) {
        exited = true;
      }
    }
    if (exited) {
      if (dt <= P.dt_min) {
        tr.termination = "neighbourhood_exit";
        break;
      }
      dt = std::max(0.5 * dt, P.dt_min);
      continue;
    }
    Velocity diff = e1.velocity;
    for (int i = 0; i < x.size(); ++i) {
      diff.alpha_dot[i] = (e1.velocity.alpha_dot[i] / x1.alpha[i] - ex.velocity.alpha_dot[i] / x.alpha[i]);
      diff.lambda_dot[i] = (e1.velocity.lambda_dot[i] / x1.bubbles[i].lambda -
                            ex.velocity.lambda_dot[i] / x.bubbles[i].lambda);
      diff.a_dot[i] = (e1.velocity.a_dot[i] - ex.velocity.a_dot[i]);
    }
    const double err = 0.5 * dt * diff.norm();
    if (err > P.rtol && dt > P.dt_min) {
      dt = std::max(0.5 * dt, P.dt_min);
      continue;
    }
    const double J0 = tr.states.back().J.center;
    const double J2 = reduced_J(x2, K, P.model).center;
    if (J2 - J0 > P.monotone_tol * dt) {
      ++tr.rejections;
      if (++consecutive >= P.max_rejections)
        throw StepFailure("reduced energy increased on " + std::to_string(consecutive) + " consecutive steps");
      dt = std::max(0.5 * dt, P.dt_min);
      continue;
    }
    consecutive = 0;
    t += dt;
    x = x2;
    try {
      ex = evaluate(x, K, land, P);
    } catch (const OutsideNeighborhood&) {
      tr.termination = "neighbourhood_exit";
      break;
    }
    tr.states.push_back(record(t, x, ex, K, P));
    if (err < 0.25 * P.rtol) dt = std::min(1.5 * dt, P.dt_max);
  }
  return tr;
}

}  // namespace nirenberg
