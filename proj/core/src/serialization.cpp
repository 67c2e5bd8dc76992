#include "nirenberg/serialization.hpp"

#include "nirenberg/errors.hpp"

namespace nirenberg {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

}  // namespace

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of numbers");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError("expected an array of numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

json to_json(const Vec& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

ScalarField field_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("field spec must be an object");
  const int n = get<int>(j, "dimension");
  if (n < 5) throw ConfigError("dimension must be at least 5");
  const double kappa0 = get_or<double>(j, "kappa0", 0.0);
  std::vector<FieldTerm> terms;
  if (j.contains("terms")) {
    if (!j["terms"].is_array()) throw ConfigError("'terms' must be an array");
    for (const auto& t : j["terms"])
      terms.push_back({Monomial::parse(get<std::string>(t, "monomial"), n + 1), get<double>(t, "coeff")});
  }
  return ScalarField(n, kappa0, std::move(terms));
}

json to_json(const ScalarField& K) {
  json terms = json::array();
  for (const auto& t : K.terms()) terms.push_back({{"monomial", t.monomial.str()}, {"coeff", t.coeff}});
  return {{"dimension", K.dim()}, {"kappa0", K.kappa0()}, {"terms", terms}};
}

Configuration configuration_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be an object");
  Configuration cfg;
  cfg.q = get<int>(j, "q");
  cfg.p = get<int>(j, "p");
  cfg.eps = get_or<double>(j, "eps", 0.1);
  if (cfg.q < 0 || cfg.p < 0 || cfg.q + cfg.p == 0) throw ConfigError("need at least one bubble");
  if (!j.contains("bubbles")) throw ConfigError("missing field 'bubbles'");
  const json& bs = j["bubbles"];
  if (!bs.is_array() || static_cast<int>(bs.size()) != cfg.q + cfg.p)
    throw ConfigError("'bubbles' must list q + p entries");
  for (const auto& b : bs) {
    if (!b.is_object() || !b.contains("point")) throw ConfigError("each bubble needs 'alpha', 'point' and 'lambda'");
    cfg.alpha.push_back(get<double>(b, "alpha"));
    cfg.bubbles.emplace_back(vec_from_json(b["point"]), get<double>(b, "lambda"));
  }
  return cfg;
}

json to_json(const Configuration& cfg) {
  json bs = json::array();
  for (int i = 0; i < cfg.size(); ++i)
    bs.push_back({{"alpha", cfg.alpha[i]}, {"point", to_json(cfg.bubbles[i].a)}, {"lambda", cfg.bubbles[i].lambda}});
  return {{"q", cfg.q}, {"p", cfg.p}, {"eps", cfg.eps}, {"bubbles", bs}};
}

FlowParams flow_params_from_json(const json& j, FlowParams p) {
  if (j.is_null()) return p;
  if (!j.is_object()) throw ConfigError("flow params must be an object");
  p.M0 = get_or(j, "M0", p.M0);
  p.M2 = get_or(j, "M2", p.M2);
  p.M4 = get_or(j, "M4", p.M4);
  p.eta = get_or(j, "eta", p.eta);
  p.M_gate = get_or(j, "M_gate", p.M_gate);
  p.m1 = get_or(j, "m1", p.m1);
  p.dt0 = get_or(j, "dt0", p.dt0);
  p.dt_max = get_or(j, "dt_max", p.dt_max);
  p.rtol = get_or(j, "rtol", p.rtol);
  p.monotone_tol = get_or(j, "monotone_tol", p.monotone_tol);
  p.max_steps = get_or(j, "max_steps", p.max_steps);
  p.certificate_c = get_or(j, "certificate_c", p.certificate_c);
  if (!(p.M0 > 1 && p.M2 > 1 && p.M4 > 1 && p.eta > 0 && p.dt0 > 0 && p.dt_max > 0 && p.rtol > 0))
    throw ConfigError("flow params out of range");
  return p;
}

json to_json(const FlowParams& p) {
  return {{"M0", p.M0}, {"M2", p.M2}, {"M4", p.M4}, {"eta", p.eta}, {"M_gate", p.M_gate}, {"m1", p.m1},
          {"dt0", p.dt0}, {"dt_max", p.dt_max}, {"rtol", p.rtol}, {"monotone_tol", p.monotone_tol},
          {"max_steps", p.max_steps}, {"certificate_c", p.certificate_c}};
}

json to_json(const ConstantsTable& ct) {
  json c = json::object();
  for (const auto& [name, e] : ct.entries()) {
    json x = {{"value", e.value}, {"error", e.error}};
    if (e.closed_form) x["closed_form"] = *e.closed_form;
    c[name] = x;
  }
  return {{"dimension", ct.n}, {"tol", ct.tol}, {"version", ct.version()}, {"constants", c}};
}

json to_json(const CriticalPointRecord& r) {
  json j = {{"location", to_json(r.location)},
            {"kind", to_string(r.kind)},
            {"morse_index", r.morse_index},
            {"value", r.value},
            {"laplacian", r.laplacian},
            {"gradient_norm", r.gradient_norm},
            {"min_abs_eigenvalue", r.min_abs_eigenvalue},
            {"nondegenerate", r.nondegenerate},
            {"on_equator", r.on_equator},
            {"classification", to_string(r.classification)}};
  if (r.kind == CriticalKind::BoundaryOfK1) j["normal_derivative"] = r.normal_derivative;
  return j;
}

json to_json(const AssumptionReport& a) {
  json checks = json::array();
  for (const auto& c : a.H3_checks)
    checks.push_back({{"z", to_json(c.z)}, {"branch_i", c.branch_i}, {"branch_ii", c.branch_ii},
                      {"ratio_first", c.ratio_first}, {"ratio_last", c.ratio_last}});
  return {{"H1", a.H1}, {"H2", a.H2}, {"H3", a.H3}, {"H3_checks", checks}, {"violations", a.violations}};
}

namespace {
json records_json(const std::vector<CriticalPointRecord>& rs) {
  json j = json::array();
  for (const auto& r : rs) j.push_back(to_json(r));
  return j;
}
}  // namespace

json to_json(const ClassifiedSets& s) {
  return {{"K_in_minus", records_json(s.K_in_minus)},
          {"K_b_plus", records_json(s.K_b_plus)},
          {"K_b_0_minus", records_json(s.K_b_0_minus)},
          {"K_infinity", records_json(s.K_infinity)}};
}

json to_json(const CensusEntry& e) {
  return {{"boundary_points", records_json(e.boundary_points)},
          {"interior_points", records_json(e.interior_points)},
          {"level", e.level},
          {"index", e.index},
          {"mass", e.mass}};
}

json to_json(const ExistenceVerdict& v) {
  return {{"theorem", to_string(v.theorem)},
          {"hypotheses", v.hypotheses},
          {"values", v.values},
          {"conclusion", v.conclusion()}};
}

json to_json(const ExistenceReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
  json j = {{"K_min", r.K_min},
            {"K_max", r.K_max},
            {"pinch", r.pinch},
            {"assumptions", to_json(r.assumptions)},
            {"critical_points", records_json(r.records)},
            {"sets", to_json(r.sets)},
            {"verdicts", verdicts}};
  j["strongest"] = r.strongest >= 0 ? json(to_string(r.verdicts[r.strongest].theorem)) : json(nullptr);
  return j;
}

json to_json(const RegionLabel& l) {
  json w = json::object();
  for (const auto& [r, x] : l.weights) w[to_string(r)] = x;
  json g = json::array();
  for (const auto& q : l.gamma) g.push_back({{"alpha", q.alpha}, {"a", q.a}, {"H", q.H}, {"lambda", q.lambda}});
  return {{"tag", to_string(l.tag)}, {"weights", w}, {"mu", l.mu}, {"gamma", g},
          {"cluster", l.cluster}, {"I", l.I}, {"i0", l.i0}, {"j0", l.j0}};
}

json to_json(const Certificate& c) {
  return {{"lhs", {{"center", c.lhs.center}, {"halfwidth", c.lhs.halfwidth}}},
          {"aggregate", c.aggregate},
          {"rhs_lower_bound", c.rhs_lower_bound},
          {"satisfied", c.satisfied}};
}

}  // namespace nirenberg
