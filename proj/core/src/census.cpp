#include "nirenberg/census.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nirenberg/errors.hpp"
#include "nirenberg/normal_form.hpp"
#include "nirenberg/quadrature.hpp"

namespace nirenberg {

std::vector<LevelBand> level_bands(int n, double K_min, double K_max, int ell_max) {
  if (ell_max < 1) throw ConfigError("ell_max must be at least 1");
  if (!(K_min > 0.0) || K_max < K_min) throw ConfigError("need 0 < K_min <= K_max");
  const double S = default_constants(n).S_n.value;
  std::vector<LevelBand> out;
  for (int l = 1; l <= ell_max; ++l) {
    const double base = std::pow(l * S, 2.0 / n);
    out.push_back({l, base / std::pow(K_max, (n - 2.0) / n), base / std::pow(K_min, (n - 2.0) / n)});
  }
  return out;
}

bool bands_separated(int n, double K_min, double K_max, int ell) {
  const auto b = level_bands(n, K_min, K_max, ell + 1);
  return b[ell - 1].max * std::pow(K_max / K_min, (n - 2.0) / n) < b[ell].min;
}

double census_level(int n, const std::vector<double>& Kb, const std::vector<double>& Ki) {
  double L = 0.0;
  for (double k : Kb) L += std::pow(k, -(n - 2) / 2.0);
  for (double k : Ki) L += 2.0 * std::pow(k, -(n - 2) / 2.0);
  return std::pow(default_constants(n).S_n.value, 2.0 / n) * std::pow(L, 2.0 / n);
}

int census_index(int n, const std::vector<int>& mb, const std::vector<int>& mi) {
  int idx = static_cast<int>(mb.size() + mi.size()) - 1;
  for (int m : mb) idx += n - 1 - m;
  for (int m : mi) idx += n - m;
  return idx;
}

std::vector<CriticalPointRecord> admissible_boundary_points(const ClassifiedSets& sets, int n) {
  std::vector<CriticalPointRecord> out;
  for (const auto& r : sets.K_b_plus)
    if (is_admissible_boundary(r, n)) out.push_back(r);
  for (const auto& r : sets.K_b_0_minus) out.push_back(r);
  return out;
}

std::vector<CensusEntry> enumerate_census(const ClassifiedSets& sets, int n, int mass_max) {
  if (mass_max < 1) throw ConfigError("mass_max must be at least 1");
  const auto zs = admissible_boundary_points(sets, n);
  const auto& ys = sets.K_in_minus;
  std::vector<CensusEntry> out;
  std::vector<int> zi, yi;
  std::function<void(size_t, int)> pick_y;
  auto emit = [&]() {
    if (zi.empty() && yi.empty()) return;
    CensusEntry e;
    std::vector<double> kb, ki;
    std::vector<int> mb, mi;
    for (int k : zi) {
      e.boundary_points.push_back(zs[k]);
      kb.push_back(zs[k].value);
      mb.push_back(zs[k].morse_index);
    }
    for (int k : yi) {
      e.interior_points.push_back(ys[k]);
      ki.push_back(ys[k].value);
      mi.push_back(ys[k].morse_index);
    }
    e.level = census_level(n, kb, ki);
    e.index = census_index(n, mb, mi);
    e.mass = static_cast<int>(zi.size() + 2 * yi.size());
    out.push_back(std::move(e));
  };
  pick_y = [&](size_t start, int budget) {
    emit();
    for (size_t k = start; k < ys.size(); ++k) {
      if (budget < 2) break;
      yi.push_back(static_cast<int>(k));
      pick_y(k + 1, budget - 2);
      yi.pop_back();
    }
  };
  std::function<void(size_t, int)> pick_z = [&](size_t start, int budget) {
    pick_y(0, budget);
    for (size_t k = start; k < zs.size(); ++k) {
      if (budget < 1) break;
      zi.push_back(static_cast<int>(k));
      pick_z(k + 1, budget - 1);
      zi.pop_back();
    }
  };
  pick_z(0, mass_max);
  std::stable_sort(out.begin(), out.end(), [](const CensusEntry& a, const CensusEntry& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.mass < b.mass;
  });
  return out;
}

int homology_contribution(const CensusEntry& entry) { return entry.index; }

namespace {
long sign_of(int idx) { return (idx % 2 == 0) ? 1 : -1; }
}  // namespace

CountingA counting_A(const std::vector<int>& ind) {
  CountingA c;
  const size_t L = ind.size();
  std::vector<long> s(L);
  for (size_t j = 0; j < L; ++j) {
    s[j] = sign_of(std::abs(ind[j]));
    (s[j] > 0 ? c.evens : c.odds)++;
    c.A1 += s[j];
  }
  for (size_t a = 0; a < L; ++a)
    for (size_t b = a + 1; b < L; ++b) {
      c.A2 += s[a] * s[b];
      for (size_t d = b + 1; d < L; ++d) {
        c.A3 += s[a] * s[b] * s[d];
        for (size_t e = d + 1; e < L; ++e) c.A4 += s[a] * s[b] * s[d] * s[e];
      }
    }
  return c;
}

CountingB counting_B(const std::vector<int>& ind) {
  CountingB c;
  const size_t L = ind.size();
  std::vector<long> s(L);
  for (size_t j = 0; j < L; ++j) {
    s[j] = sign_of(std::abs(ind[j]));
    (s[j] > 0 ? c.evens : c.odds)++;
    c.B1 += s[j];
  }
  for (size_t a = 0; a < L; ++a)
    for (size_t b = a + 1; b < L; ++b) c.B2 += s[a] * s[b];
  return c;
}

int chi_below(const std::vector<CensusEntry>& census, double level, const std::vector<LevelBand>& bands) {
  if (bands.empty()) throw ConfigError("no level bands supplied");
  for (const auto& b : bands)
    if (level >= b.min && level <= b.max)
      throw LevelInsideBand("level " + std::to_string(level) + " lies inside band " + std::to_string(b.ell));
  for (size_t k = 0; k + 1 < bands.size(); ++k)
    if (bands[k].max >= bands[k + 1].min && level > bands[k + 1].min && level < bands[k].max)
      throw LevelInsideBand("bands " + std::to_string(k + 1) + " and " + std::to_string(k + 2) + " overlap at this level");
  if (level > bands.back().max) throw LevelInsideBand("level lies above the last supplied band");
  for (const auto& e : census)
    if (e.mass > bands.back().ell) throw ConfigError("census contains masses beyond the supplied bands");
  int chi = 0;
  for (const auto& e : census)
    if (e.level < level) chi += (e.index % 2 == 0) ? 1 : -1;
  return chi;
}

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::T1_1: return "T1_1";
    case Theorem::T1_2: return "T1_2";
    default: return "T1_3";
  }
}

double pinch_threshold(Theorem t, int n) {
  const double base = t == Theorem::T1_1 ? 5.0 / 4.0 : (t == Theorem::T1_2 ? 2.0 : 3.0 / 2.0);
  return std::pow(base, 1.0 / (n - 2));
}

ExistenceVerdict evaluate_theorem(Theorem t, const ExistenceReport& d, int n) {
  ExistenceVerdict v;
  v.theorem = t;
  std::vector<int> iz, iy;
  for (const auto* s : {&d.sets.K_b_plus, &d.sets.K_b_0_minus})
    for (const auto& r : *s) iz.push_back(n - 1 - r.morse_index);
  for (const auto& r : d.sets.K_in_minus) iy.push_back(n - r.morse_index);
  const CountingA ca = counting_A(iz);
  const CountingB cb = counting_B(iy);
  const double thr = pinch_threshold(t, n);
  bool k1_nondegenerate = true;
  for (const auto& r : d.records)
    if (r.kind == CriticalKind::BoundaryOfK1 && !r.nondegenerate) k1_nondegenerate = false;
  v.values["pinch_ratio"] = d.pinch;
  v.values["pinch_threshold"] = thr;
  v.values["A1"] = static_cast<double>(ca.A1);
  v.values["B1"] = static_cast<double>(cb.B1);
  v.values["K_infinity_count"] = static_cast<double>(d.sets.K_infinity.size());
  const bool pinch_ok = d.pinch < thr;
  v.hypotheses["pinch"] = pinch_ok;
  switch (t) {
    case Theorem::T1_1:
      v.hypotheses["H1"] = d.assumptions.H1;
      v.hypotheses["H2"] = d.assumptions.H2;
      v.hypotheses["H3"] = d.assumptions.H3;
      v.hypotheses["K_infinity_at_least_2"] = d.sets.K_infinity.size() >= 2;
      break;
    case Theorem::T1_2:
      v.hypotheses["K1_nondegenerate"] = k1_nondegenerate;
      v.hypotheses["H3"] = d.assumptions.H3;
      v.hypotheses["A1_not_1"] = ca.A1 != 1;
      break;
    case Theorem::T1_3: {
      v.hypotheses["H1"] = d.assumptions.H1;
      v.hypotheses["H2"] = d.assumptions.H2;
      v.hypotheses["H3"] = d.assumptions.H3;
      v.hypotheses["A1_is_1"] = ca.A1 == 1;
      const long count = static_cast<long>(iz.size());
      const bool odd = count % 2 == 1;
      const long k = odd ? (count - 1) / 2 : -1;
      v.values["k"] = static_cast<double>(k);
      v.hypotheses["B1_not_minus_k"] = odd && cb.B1 != -k;
      break;
    }
  }
  v.solution_exists = std::all_of(v.hypotheses.begin(), v.hypotheses.end(), [](const auto& kv) { return kv.second; });
  return v;
}

ExistenceReport existence_check(const ScalarField& K, const std::vector<Theorem>& which, const ExistenceOptions& opt) {
  ExistenceReport rep;
  const int n = K.dim();
  const FieldExtrema ex = field_min_max(K, opt.grid_density);
  rep.K_min = ex.K_min;
  rep.K_max = ex.K_max;
  rep.pinch = ex.K_max / ex.K_min;
  rep.records = find_critical_points(K, opt.landscape);
  rep.assumptions = check_assumptions(rep.records, K, opt.landscape);
  rep.sets = classify(rep.records, opt.landscape.zero_tol);
  std::vector<Theorem> order = which.empty() ? std::vector<Theorem>{Theorem::T1_2, Theorem::T1_3, Theorem::T1_1} : which;
  for (Theorem t : order) {
    ExistenceVerdict v = evaluate_theorem(t, rep, n);
    if (opt.strict) {
      for (const char* h : {"H1", "H2", "H3", "K1_nondegenerate"}) {
        auto it = v.hypotheses.find(h);
        if (it != v.hypotheses.end() && !it->second) {
          std::string msg = to_string(t) + " assumption " + h + " fails";
          for (const auto& s : rep.assumptions.violations) msg += "; " + s;
          throw AssumptionViolation(msg);
        }
      }
    }
    rep.verdicts.push_back(v);
    if (rep.strongest < 0 && v.solution_exists) rep.strongest = static_cast<int>(rep.verdicts.size()) - 1;
  }
  return rep;
}

}  // namespace nirenberg
