#pragma once

// Verdicts from tail scans: recurrence, transience, ergodicity, plus the
// null-chain annotation, the small-alpha transience shortcut and weighted
// (f-)ergodicity.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stablike/chain.hpp"
#include "stablike/drift.hpp"
#include "stablike/io.hpp"

namespace stablike {

enum class Verdict { Recurrent, Transient, Ergodic, NullCandidate, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Recurrent: return "Recurrent";
    case Verdict::Transient: return "Transient";
    case Verdict::Ergodic: return "Ergodic";
    case Verdict::NullCandidate: return "NullCandidate";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// One evaluated condition.
struct Evidence {
  ConditionId condition = ConditionId::C12;
  std::optional<double> beta;
  double threshold = 0.0;
  double tail_sup = 0.0;
  double tail_inf = 0.0;
  double margin = 0.0;
  double scan_error = 0.0;
  bool trend_monotone = true;
  bool supports = false;
  std::string error;  // nonempty when the scan failed

  std::string label() const {
    std::string s = to_string(condition);
    if (beta) s += "[beta=" + io::fmt(*beta) + "]";
    return s;
  }
};

inline Evidence evidence_from(const TailScanReport& r) {
  return {r.condition_id, r.beta,           r.threshold,      r.tail_sup_estimate, r.tail_inf_estimate,
          r.margin,       r.scan_error,     r.trend_monotone, r.supports(),        {}};
}

struct Classification {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> conditions_used;
  std::map<std::string, double> margins;  // supporting conditions only
  std::vector<std::string> caveats;
  std::optional<double> beta_used;
  std::string primary_condition;  // best-margin condition of the deciding group
  bool null_candidate = false;  // recurrent and the reversed conditions hold
  bool had_errors = false;
  std::vector<Evidence> evidence;  // every condition evaluated
};

struct ClassifySettings {
  ScanGrids grids;
  unsigned threads = 0;
  /// Replaces the default beta choices when set.
  std::optional<std::vector<double>> recurrence_betas;
  std::optional<std::vector<double>> transience_betas;
  /// Largest decade of |x| probed by the small-alpha shortcut.
  double smallalpha_horizon_decade = 120.0;
};

namespace classify_detail {

inline std::vector<double> recurrence_betas(const ChainSpec& spec, const ClassifySettings& s) {
  if (s.recurrence_betas) return *s.recurrence_betas;
  std::vector<double> b;
  const double first = std::min(1.0, spec.alpha_profile.inf() - 0.05);
  if (first > 0.0) b.push_back(first);
  if (first != 0.01) b.push_back(0.01);
  return b;
}

inline std::vector<double> transience_betas(const ClassifySettings& s) {
  return s.transience_betas ? *s.transience_betas : std::vector<double>{0.5, 0.01};
}

struct Runner {
  const ChainSpec& spec;
  const ClassifySettings& settings;
  DensityCache cache;
  bool had_errors = false;

  Evidence run(ConditionId c, ConditionParams cp = {}) {
    try {
      return evidence_from(tail_scan(spec, settings.grids, c, cp, {settings.threads, &cache}));
    } catch (const PreconditionError&) {
      throw;
    } catch (const std::exception& e) {
      had_errors = true;
      Evidence ev;
      ev.condition = c;
      ev.beta = cp.beta;
      ev.error = e.what();
      return ev;
    }
  }

  /// Skips beta values the condition does not admit.
  void run_betas(std::vector<Evidence>& out, ConditionId c, const std::vector<double>& betas, double upper_exclusive,
                 bool allow_one) {
    for (double b : betas) {
      if (!(b > 0.0) || !(b < upper_exclusive) || b > 1.0 || (!allow_one && b >= 1.0)) continue;
      out.push_back(run(c, {b, {}}));
    }
  }
};

inline bool any_support(const std::vector<Evidence>& v) {
  return std::any_of(v.begin(), v.end(), [](const Evidence& e) { return e.supports; });
}

/// The first group recorded decides beta_used and the primary condition.
inline void record_support(Classification& out, const std::vector<Evidence>& group) {
  const Evidence *best = nullptr, *best_beta = nullptr;
  for (const auto& e : group) {
    if (!e.supports) continue;
    out.conditions_used.push_back(e.label());
    out.margins[e.label()] = e.margin;
    if (!best || e.margin > best->margin) best = &e;
    if (e.beta && (!best_beta || e.margin > best_beta->margin)) best_beta = &e;
  }
  if (out.primary_condition.empty() && best) {
    out.primary_condition = best->label();
    if (best_beta) out.beta_used = best_beta->beta;
  }
}

}  // namespace classify_detail

struct NullEvidence {
  bool evidence = false;
  std::vector<Evidence> checks;
  std::vector<std::string> caveats;
};

/// Reversed recurrence conditions: liminf LHS > threshold at limsup alpha.
/// Meaningful only for chains already known to be recurrent.
inline NullEvidence classify_null(const ChainSpec& spec, const ClassifySettings& settings = {}) {
  if (!(spec.alpha_profile.limsup() < 2.0)) throw PreconditionError("classify_null: needs limsup alpha < 2");
  spec.validate();
  classify_detail::Runner run{spec, settings};
  NullEvidence out;
  out.checks.push_back(run.run(ConditionId::N12));
  const double bound = std::min(spec.alpha_profile.inf(), spec.alpha_profile.limsup());
  run.run_betas(out.checks, ConditionId::N13, classify_detail::recurrence_betas(spec, settings), bound, true);
  out.evidence = classify_detail::any_support(out.checks);
  if (!out.checks.front().supports) out.caveats.push_back("reversed log condition not met");
  const auto is_constant = [](const ProfileFn& p) { return std::holds_alternative<profile::Constant>(p.rep()); };
  if (is_constant(spec.alpha_profile) && is_constant(spec.gamma_profile) && is_constant(spec.delta_profile))
    out.caveats.push_back("random walk: no finite invariant measure exists (family-level fact, not computed)");
  return out;
}

inline Classification classify(const ChainSpec& spec, const ClassifySettings& settings = {}) {
  spec.validate();
  using classify_detail::any_support;
  classify_detail::Runner run{spec, settings};
  const double inf_a = spec.alpha_profile.inf();
  const double liminf_a = spec.alpha_profile.liminf();
  const double limsup_a = spec.alpha_profile.limsup();
  const auto rec_betas = classify_detail::recurrence_betas(spec, settings);

  std::vector<Evidence> rec, trans, erg;
  if (liminf_a > 0.0) {
    rec.push_back(run.run(ConditionId::C12));
    run.run_betas(rec, ConditionId::C13, rec_betas, liminf_a, true);
    rec.push_back(run.run(ConditionId::E1));
  }
  if (limsup_a < 2.0) {
    run.run_betas(trans, ConditionId::C14, classify_detail::transience_betas(settings), 1.0, false);
    trans.push_back(run.run(ConditionId::E2));
  }
  if (inf_a > 0.0) {
    erg.push_back(run.run(ConditionId::C15));
    run.run_betas(erg, ConditionId::C16, rec_betas, inf_a, true);
  }

  Classification out;
  for (const auto* g : {&rec, &trans, &erg}) out.evidence.insert(out.evidence.end(), g->begin(), g->end());
  const bool r = any_support(rec), tr = any_support(trans), e = any_support(erg);
  out.caveats.push_back("numeric evidence on a finite grid, not a proof");
  if (spec.unchecked())
    out.caveats.push_back("kernel regularity (tail uniformity, continuity) assumed, not certified, for custom profiles");

  if ((r || e) && tr) {
    out.verdict = Verdict::Inconclusive;
    out.caveats.push_back("recurrence- and transience-supporting conditions disagree");
    for (const auto& ev : out.evidence) out.margins[ev.label()] = ev.margin;
  } else if (e && r) {
    out.verdict = Verdict::Ergodic;
    classify_detail::record_support(out, erg);
    classify_detail::record_support(out, rec);
  } else if (r) {
    out.verdict = Verdict::Recurrent;
    classify_detail::record_support(out, rec);
  } else if (tr) {
    out.verdict = Verdict::Transient;
    classify_detail::record_support(out, trans);
  } else {
    out.verdict = Verdict::Inconclusive;
  }

  if (out.verdict == Verdict::Recurrent && limsup_a < 2.0) {
    const auto n = classify_null(spec, settings);
    out.null_candidate = n.evidence;
    for (const auto& ev : n.checks) out.evidence.push_back(ev);
    if (n.evidence) out.caveats.push_back("reversed recurrence conditions hold: null chain if recurrent");
  }
  out.had_errors = run.had_errors;
  if (out.had_errors) out.caveats.push_back("some scans failed; see evidence errors");
  return out;
}

struct SmallAlphaEvidence {
  bool evidence = false;
  bool monotone = false;
  double horizon = 0.0;
  double value_at_horizon = 0.0;
};

/// Checks alpha(x)|x|^(alpha(x)-1)/c(x) -> 0 (decreasing along |x|, below
/// 1e-6 at the horizon) for chains with sup alpha < 1, a sufficient
/// condition for transience.
inline SmallAlphaEvidence classify_transient_smallalpha(const ChainSpec& spec, const ClassifySettings& settings = {}) {
  if (!(spec.alpha_profile.sup() < 1.0)) throw PreconditionError("classify_transient_smallalpha: needs sup alpha < 1");
  spec.validate();
  const auto ratio = [&](double x) {
    const double a = alpha_at(spec, x);
    return a * std::pow(std::abs(x), a - 1.0) / c_at(spec, x);
  };
  double lo = std::numeric_limits<double>::infinity();
  for (double x : settings.grids.x) lo = std::min(lo, std::abs(x));
  const double lo_dec = std::log10(lo);
  const double hi_dec = std::max(settings.smallalpha_horizon_decade, lo_dec + 3.0);
  SmallAlphaEvidence out;
  out.monotone = true;
  double prev_pos = std::numeric_limits<double>::infinity(), prev_neg = prev_pos;
  for (double dec = lo_dec; dec <= hi_dec + 1e-9; dec += 0.25) {
    const double ax = std::pow(10.0, dec);
    const double vp = ratio(ax), vn = ratio(-ax);
    if (!(vp < prev_pos) || !(vn < prev_neg)) out.monotone = false;
    prev_pos = vp;
    prev_neg = vn;
    out.horizon = ax;
    out.value_at_horizon = std::max(vp, vn);
  }
  out.evidence = out.monotone && out.value_at_horizon < 1e-6;
  return out;
}

struct FErgodicEvidence {
  bool evidence = false;
  std::string weight_class;  // functions 1 <= f <= g certified
  std::vector<Evidence> checks;
  std::vector<std::string> caveats;
};

/// Weighted ergodicity scans: the d-term of the ergodicity conditions is
/// multiplied by g(x) (and |x|^-beta in the power form).
inline FErgodicEvidence f_ergodic_check(const ChainSpec& spec, const ProfileFn& g, const ClassifySettings& settings = {}) {
  spec.validate();
  const double inf_a = spec.alpha_profile.inf();
  if (!(inf_a > 0.0)) throw PreconditionError("f_ergodic_check: needs inf alpha > 0");
  for (double w : g.values())
    if (!(w >= 1.0)) throw PreconditionError("f_ergodic_check: weight must be >= 1");
  classify_detail::Runner run{spec, settings};
  FErgodicEvidence out;
  out.checks.push_back(run.run(ConditionId::F24, {std::nullopt, g}));
  for (double b : classify_detail::recurrence_betas(spec, settings)) {
    if (!(b > 0.0 && b <= 1.0 && b < inf_a)) continue;
    out.checks.push_back(run.run(ConditionId::F25, {b, g}));
  }
  out.evidence = classify_detail::any_support(out.checks);
  if (out.evidence) {
    out.weight_class = "every measurable f with 1 <= f <= g";
  } else {
    out.caveats.push_back("weighted drift conditions not met on the grid; weight may grow faster than the drift margin");
  }
  return out;
}

inline nlohmann::json to_json(const Evidence& e) {
  nlohmann::json j{{"condition", to_string(e.condition)},
                   {"threshold", e.threshold},
                   {"tail_sup", e.tail_sup},
                   {"tail_inf", e.tail_inf},
                   {"margin", e.margin},
                   {"scan_error", e.scan_error},
                   {"trend_monotone", e.trend_monotone},
                   {"supports", e.supports}};
  j["beta"] = e.beta ? nlohmann::json(*e.beta) : nlohmann::json(nullptr);
  if (!e.error.empty()) j["error"] = e.error;
  return j;
}

inline nlohmann::json to_json(const Classification& c) {
  nlohmann::json j;
  j["verdict"] = to_string(c.verdict);
  j["conditions_used"] = c.conditions_used;
  j["margins"] = c.margins;
  j["caveats"] = c.caveats;
  j["beta_used"] = c.beta_used ? nlohmann::json(*c.beta_used) : nlohmann::json(nullptr);
  j["primary_condition"] = c.primary_condition;
  j["null_candidate"] = c.null_candidate;
  j["had_errors"] = c.had_errors;
  auto ev = nlohmann::json::array();
  for (const auto& e : c.evidence) ev.push_back(to_json(e));
  j["evidence"] = ev;
  return j;
}

/// One-line human summary, e.g.
/// "Recurrent via C12 (margin 2.541 vs threshold 2.094, scan error 0.186)".
inline std::string summary_line(const Classification& c) {
  std::ostringstream os;
  os << to_string(c.verdict);
  const Evidence* best = nullptr;
  for (const auto& e : c.evidence)
    if (e.label() == c.primary_condition && e.supports && !best) best = &e;
  if (best && c.verdict != Verdict::Inconclusive) {
    os << " via " << best->label() << " (margin " << io::fmt(best->margin) << " vs threshold " << io::fmt(best->threshold)
       << ", scan error " << io::fmt(best->scan_error) << ")";
  }
  if (c.null_candidate) os << "; null candidate";
  if (c.had_errors) os << "; with scan errors";
  return os.str();
}

}  // namespace stablike
