// Command-line front end: constants, critical-points, census, counting, existence, flow, verify.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nirenberg/census.hpp"
#include "nirenberg/errors.hpp"
#include "nirenberg/flow.hpp"
#include "nirenberg/quadrature.hpp"
#include "nirenberg/serialization.hpp"

#ifdef NIRENBERG_HAVE_SUITES
#include "suites.hpp"
#endif

using namespace nirenberg;

namespace {

constexpr unsigned long kDefaultSeed = 20240601;

struct RunConfig {
  json doc = json::object();
  unsigned long seed = kDefaultSeed;

  const json& section(const std::string& key) const {
    static const json empty = json::object();
    if (!doc.contains(key)) return empty;
    if (!doc[key].is_object()) throw ConfigError("'" + key + "' must be an object");
    return doc[key];
  }
  ScalarField field() const {
    if (!doc.contains("field")) throw ConfigError("missing field 'field'");
    return field_from_json(doc["field"]);
  }
  template <class T>
  T value(const json& s, const std::string& key, T fallback) const {
    if (!s.contains(key)) return fallback;
    try {
      return s[key].get<T>();
    } catch (const json::exception&) {
      throw ConfigError("field '" + key + "' has the wrong type");
    }
  }
  LandscapeOptions landscape() const {
    const json& s = section("landscape");
    LandscapeOptions o;
    o.seed = seed;
    o.seeds_per_dim = value(s, "seeds_per_dim", o.seeds_per_dim);
    o.seed_cap = value(s, "seed_cap", o.seed_cap);
    o.degenerate_tol = value(s, "degenerate_tol", o.degenerate_tol);
    o.zero_tol = value(s, "zero_tol", o.zero_tol);
    o.throw_on_degenerate = value(s, "throw_on_degenerate", o.throw_on_degenerate);
    if (o.seeds_per_dim < 1 || o.seed_cap < 1 || !(o.degenerate_tol > 0) || !(o.zero_tol > 0))
      throw ConfigError("landscape options out of range");
    return o;
  }
};

RunConfig load_config(const std::string& path) {
  RunConfig rc;
  if (path.empty()) return rc;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    rc.doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!rc.doc.is_object()) throw ConfigError("config must be a JSON object");
  rc.seed = rc.value(rc.doc, "seed", kDefaultSeed);
  return rc;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

void emit_json(json j, const RunConfig& rc, std::optional<int> n, const std::string& path) {
  j["seed"] = rc.seed;
  j["constants_version"] = n ? json(default_constants(*n).version()) : json(nullptr);
  emit(j.dump(2) + "\n", path);
}

std::vector<Theorem> parse_theorems(const std::vector<std::string>& names) {
  std::vector<Theorem> out;
  for (const auto& s : names) {
    if (s == "T1_1") out.push_back(Theorem::T1_1);
    else if (s == "T1_2") out.push_back(Theorem::T1_2);
    else if (s == "T1_3") out.push_back(Theorem::T1_3);
    else throw ConfigError("unknown theorem " + s + " (expected T1_1, T1_2 or T1_3)");
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_constants(const RunConfig& rc, int n_flag, double tol_flag, const std::string& out) {
  const json& q = rc.section("quadrature");
  int n = n_flag;
  if (n == 0) n = rc.doc.contains("field") ? rc.field().dim() : 5;
  const double tol = tol_flag > 0 ? tol_flag : rc.value(q, "tol", 1e-10);
  const ConstantsTable ct = compute_constants(n, tol);
  json j = to_json(ct);
  j["seed"] = rc.seed;
  j["constants_version"] = ct.version();
  emit(j.dump(2) + "\n", out);
  return 0;
}

int cmd_critical_points(const RunConfig& rc, const std::string& out) {
  const ScalarField K = rc.field();
  const LandscapeOptions lo = rc.landscape();
  auto recs = find_critical_points(K, lo);
  const AssumptionReport rep = check_assumptions(recs, K, lo);
  const ClassifiedSets sets = classify(recs, lo.zero_tol);
  json jr = json::array();
  for (const auto& r : recs) jr.push_back(to_json(r));
  emit_json({{"records", jr}, {"assumptions", to_json(rep)}, {"sets", to_json(sets)}}, rc, K.dim(), out);
  return 0;
}

int cmd_census(const RunConfig& rc, int mass_flag, const std::string& out) {
  const ScalarField K = rc.field();
  const LandscapeOptions lo = rc.landscape();
  const int mass_max = mass_flag > 0 ? mass_flag : rc.value(rc.section("census"), "mass_max", 4);
  if (mass_max < 1) throw ConfigError("census.mass_max must be at least 1");
  auto recs = find_critical_points(K, lo);
  const ClassifiedSets sets = classify(recs, lo.zero_tol);
  const int n = K.dim();
  const auto census = enumerate_census(sets, n, mass_max);
  const FieldExtrema mm = field_min_max(K, rc.value(rc.section("existence"), "grid_density", 20));
  json je = json::array();
  for (const auto& e : census) je.push_back(to_json(e));
  json jb = json::array();
  for (const auto& b : level_bands(n, mm.K_min, mm.K_max, mass_max))
    jb.push_back({{"ell", b.ell}, {"min", b.min}, {"max", b.max}});
  emit_json({{"mass_max", mass_max}, {"K_min", mm.K_min}, {"K_max", mm.K_max}, {"bands", jb}, {"entries", je}}, rc, n,
            out);
  return 0;
}

std::vector<int> parse_indices(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("index list must be comma-separated integers, got '" + tok + "'");
    }
  }
  return out;
}

int cmd_counting(const RunConfig& rc, bool A, bool B, const std::string& indices, const std::string& out) {
  if (A == B) throw ConfigError("counting needs exactly one of --A or --B");
  const auto idx = parse_indices(indices);
  json j = {{"indices", idx}};
  if (A) {
    const auto a = counting_A(idx);
    j.update({{"A1", a.A1}, {"A2", a.A2}, {"A3", a.A3}, {"A4", a.A4}, {"evens", a.evens}, {"odds", a.odds}});
  } else {
    const auto b = counting_B(idx);
    j.update({{"B1", b.B1}, {"B2", b.B2}, {"evens", b.evens}, {"odds", b.odds}});
  }
  emit_json(j, rc, std::nullopt, out);
  return 0;
}

int cmd_existence(const RunConfig& rc, const std::vector<std::string>& theorem_flags, const std::string& out) {
  const ScalarField K = rc.field();
  const json& s = rc.section("existence");
  ExistenceOptions opt;
  opt.landscape = rc.landscape();
  opt.grid_density = rc.value(s, "grid_density", opt.grid_density);
  opt.strict = rc.value(s, "strict", opt.strict);
  std::vector<std::string> names = theorem_flags;
  if (names.empty()) names = rc.value(s, "theorems", std::vector<std::string>{});
  const ExistenceReport rep = existence_check(K, parse_theorems(names), opt);
  emit_json(to_json(rep), rc, K.dim(), out);
  for (const auto& v : rep.verdicts) std::cerr << to_string(v.theorem) << ": " << v.conclusion() << "\n";
  return 0;
}

int cmd_flow(const RunConfig& rc, double T_flag, const std::string& out, const std::string& cert_path) {
  const ScalarField K = rc.field();
  const json& s = rc.section("flow");
  if (!s.contains("initial")) throw ConfigError("missing field 'flow.initial'");
  Configuration cfg = configuration_from_json(s["initial"]);
  if (cfg.dim() != K.dim()) throw ConfigError("flow.initial points do not match the field dimension");
  if (rc.value(s, "normalize_alpha", true)) cfg = normalize_alphas(cfg, K);
  const FlowParams P = flow_params_from_json(s.contains("params") ? s["params"] : json(nullptr));
  const double T = T_flag > 0 ? T_flag : rc.value(s, "T", 1.0);
  if (!(T > 0)) throw ConfigError("flow.T must be positive");
  for (const auto& w : P.check(K.dim(), cfg.size())) std::cerr << "warning: " << w << "\n";
  const FlowLandscape land = FlowLandscape::compute(K, rc.landscape());
  const Trajectory tr = integrate_flow(cfg, K, land, T, P);

  const int n = K.dim();
  std::ostringstream csv;
  csv << "# seed=" << rc.seed << " constants_version=" << default_constants(n).version() << "\n";
  csv << "t";
  for (int i = 0; i < cfg.size(); ++i) {
    for (int k = 0; k <= n; ++k) csv << ",a" << i << "_" << k;
    csv << ",lambda" << i << ",alpha" << i;
  }
  csv << ",J_center,J_halfwidth,region,mu_max\n";
  for (const auto& st : tr.states) {
    csv << fmt(st.t);
    for (int i = 0; i < st.cfg.size(); ++i) {
      for (int k = 0; k <= n; ++k) csv << "," << fmt(st.cfg.bubbles[i].a[k]);
      csv << "," << fmt(st.cfg.bubbles[i].lambda) << "," << fmt(st.cfg.alpha[i]);
    }
    csv << "," << fmt(st.J.center) << "," << fmt(st.J.halfwidth) << "," << to_string(st.label.tag) << ","
        << fmt(st.mu_max()) << "\n";
  }
  emit(csv.str(), out);
  if (!cert_path.empty()) {
    json certs = json::array();
    for (const auto& st : tr.states) {
      json c = to_json(decrease_certificate(st.cfg, K, land, P));
      c["t"] = st.t;
      certs.push_back(c);
    }
    json j = {{"termination", tr.termination}, {"rejections", tr.rejections}, {"params", to_json(P)},
              {"certificates", certs}};
    j["seed"] = rc.seed;
    j["constants_version"] = default_constants(n).version();
    emit(j.dump(2) + "\n", cert_path);
  }
  std::cerr << "flow: " << tr.states.size() << " states, termination " << tr.termination << "\n";
  return 0;
}

int cmd_verify(const std::string& suite) {
#ifdef NIRENBERG_HAVE_SUITES
  std::vector<std::string> which;
  if (suite.empty() || suite == "all") which = suites::names();
  else which.push_back(suite);
  int failed = 0;
  for (const auto& name : which) {
    const auto r = suites::run(name);
    std::printf("%s %s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    failed += !r.pass;
  }
  return failed == 0 ? 0 : 1;
#else
  (void)suite;
  throw ConfigError("verify is unavailable: built without the test suites");
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional reduction toolkit for prescribed scalar curvature on the half-sphere"};
  app.require_subcommand(1);
  std::string config_path, out;
  app.add_option("-c,--config", config_path, "JSON configuration file");
  app.add_option("-o,--out", out, "output path (default stdout)");

  int n_flag = 0;
  double tol_flag = 0.0;
  auto* constants = app.add_subcommand("constants", "quadrature constants table");
  constants->add_option("-n,--dimension", n_flag, "dimension n >= 5");
  constants->add_option("--tol", tol_flag, "relative quadrature tolerance");

  auto* critical = app.add_subcommand("critical-points", "critical points of K and K_1 with the assumption report");

  int mass_flag = 0;
  auto* census = app.add_subcommand("census", "critical points at infinity with levels and indices");
  census->add_option("--mass-max", mass_flag, "largest q + 2p");

  bool flagA = false, flagB = false;
  std::string indices;
  auto* counting = app.add_subcommand("counting", "alternating index sums A1..A4 or B1, B2");
  counting->add_flag("--A", flagA, "boundary sums over n-1-morse(K_1, z)");
  counting->add_flag("--B", flagB, "interior sums over n-morse(K, y)");
  counting->add_option("--indices", indices, "comma-separated index list");

  std::vector<std::string> theorems;
  auto* existence = app.add_subcommand("existence", "existence decision procedures");
  existence->add_option("--theorem", theorems, "T1_1, T1_2 or T1_3 (default: all, strongest first)");

  double T_flag = 0.0;
  std::string cert_path;
  auto* flow = app.add_subcommand("flow", "integrate the pseudogradient flow and write a CSV trajectory");
  flow->add_option("-T,--t-max", T_flag, "final time");
  flow->add_option("--certificate", cert_path, "write per-state decrease certificates as JSON");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run the oracle suites");
  verify->add_option("--suite", suite, "suite name or 'all'");

  for (auto* sc : {constants, critical, census, counting, existence, flow, verify}) {
    sc->add_option("-c,--config", config_path, "JSON configuration file");
    sc->add_option("-o,--out", out, "output path (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig rc = load_config(config_path);
    if (*constants) return cmd_constants(rc, n_flag, tol_flag, out);
    if (*critical) return cmd_critical_points(rc, out);
    if (*census) return cmd_census(rc, mass_flag, out);
    if (*counting) return cmd_counting(rc, flagA, flagB, indices, out);
    if (*existence) return cmd_existence(rc, theorems, out);
    if (*flow) return cmd_flow(rc, T_flag, out, cert_path);
    if (*verify) return cmd_verify(suite);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
