#pragma once

// Declarative run configuration (JSON, versioned by schema_version).

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stablike/chain.hpp"
#include "stablike/classify.hpp"
#include "stablike/drift.hpp"
#include "stablike/errors.hpp"
#include "stablike/io.hpp"

namespace stablike {

inline constexpr int kSchemaVersion = 1;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScanConfig {
  double x_lo_decade = 2.0;
  double x_hi_decade = 5.0;
  int x_per_decade = 4;
  std::vector<double> delta = default_delta_grid();
  std::vector<double> d = default_d_grid();
  std::optional<std::vector<double>> recurrence_betas;
  std::optional<std::vector<double>> transience_betas;
  std::string condition = "C12";  // used by drift-scan
  std::optional<double> beta;     // used by drift-scan
  unsigned threads = 0;
};

struct ThresholdsConfig {
  std::vector<double> alpha = {0.5, 1.0, 1.5};
  std::vector<double> beta = {};
};

struct TvConfig {
  double x0_a = -100.0;
  double x0_b = 100.0;
  std::vector<std::size_t> time_points = {1, 10, 100, 1000};
  std::size_t n_paths = 10000;
  double bin_width = 5.0;
};

struct McConfig {
  std::uint64_t seed = 0;
  std::size_t n_paths = 1000;
  std::size_t n_steps = 10000;
  double x0 = 50.0;
  double radius = 10.0;
  double compact_lo = -50.0;
  double compact_hi = 50.0;
  std::optional<TvConfig> tv;
};

struct SimulateConfig {
  double x0 = 0.0;
  std::size_t n_steps = 1000;
  std::uint64_t seed = 0;
};

struct RunConfig {
  ChainSpec chain;
  nlohmann::json chain_json;  // normalized chain description
  ScanConfig scan;
  ThresholdsConfig thresholds;
  std::optional<McConfig> mc;
  std::optional<SimulateConfig> simulate;
  std::string output_directory;  // empty: standard output

  ScanGrids grids() const {
    return {default_x_grid(scan.x_lo_decade, scan.x_hi_decade, scan.x_per_decade), scan.delta, scan.d};
  }
  ClassifySettings classify_settings() const {
    ClassifySettings s;
    s.grids = grids();
    s.threads = scan.threads;
    s.recurrence_betas = scan.recurrence_betas;
    s.transience_betas = scan.transience_betas;
    return s;
  }
};

namespace config_detail {

using nlohmann::json;

struct Reader {
  std::vector<std::string>& errors;

  void unknown_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) return;
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!ok.count(it.key())) errors.push_back(path + "." + it.key() + ": unknown key");
  }

  bool object(const json& j, const std::string& path) {
    if (!j.is_object()) {
      errors.push_back(path + ": expected a table");
      return false;
    }
    return true;
  }

  template <class T>
  void number(const json& j, const char* key, const std::string& path, T& out) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_number()) {
      errors.push_back(path + "." + key + ": expected a number");
      return;
    }
    if constexpr (std::is_integral_v<T>) {
      if (!(v.is_number_integer() || v.is_number_unsigned()) || (v.is_number_integer() && v.template get<std::int64_t>() < 0)) {
        errors.push_back(path + "." + key + ": expected a nonnegative integer");
        return;
      }
    }
    out = v.template get<T>();
  }

  template <class T>
  void number_list(const json& j, const char* key, const std::string& path, std::vector<T>& out) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_array()) {
      errors.push_back(path + "." + key + ": expected a list of numbers");
      return;
    }
    std::vector<T> tmp;
    for (const auto& e : v) {
      if (!e.is_number() || (std::is_integral_v<T> && !(e.is_number_unsigned() || (e.is_number_integer() && e.template get<std::int64_t>() >= 0)))) {
        errors.push_back(path + "." + key + ": expected a list of numbers");
        return;
      }
      tmp.push_back(e.template get<T>());
    }
    out = std::move(tmp);
  }

  enum class Range { Alpha, Positive, Finite };

  std::optional<ProfileFn> profile(const json& j, const std::string& path, Range range) {
    if (!object(j, path)) return std::nullopt;
    if (!j.contains("type") || !j.at("type").is_string()) {
      errors.push_back(path + ".type: expected one of constant, two_valued, periodic, piecewise");
      return std::nullopt;
    }
    const std::size_t before = errors.size();
    const auto type = j.at("type").get<std::string>();
    auto check = [&](const std::vector<double>& vals) {
      for (double v : vals) {
        const std::string what = path + ": value " + io::fmt(v);
        if (range == Range::Alpha && !(v > 0.0 && v < 2.0)) errors.push_back(what + " outside (0, 2)");
        if (range == Range::Positive && !(v > 0.0 && std::isfinite(v))) errors.push_back(what + " must be positive");
        if (range == Range::Finite && !std::isfinite(v)) errors.push_back(what + " must be finite");
      }
    };
    auto required = [&](const char* key) {
      if (!j.contains(key)) errors.push_back(path + "." + key + ": required");
    };
    std::optional<ProfileFn> out;
    if (type == "constant") {
      unknown_keys(j, path, {"type", "value"});
      required("value");
      double v = 0.0;
      number(j, "value", path, v);
      check({v});
      if (errors.size() == before) out = ProfileFn::constant(v);
    } else if (type == "two_valued") {
      unknown_keys(j, path, {"type", "left", "right"});
      required("left");
      required("right");
      double l = 0.0, r = 0.0;
      number(j, "left", path, l);
      number(j, "right", path, r);
      check({l, r});
      if (errors.size() == before) out = ProfileFn::two_valued(l, r);
    } else if (type == "periodic") {
      unknown_keys(j, path, {"type", "period", "values"});
      required("period");
      required("values");
      double period = 0.0;
      std::vector<double> vals;
      number(j, "period", path, period);
      number_list(j, "values", path, vals);
      if (!(period > 0.0)) errors.push_back(path + ".period: must be positive");
      if (vals.empty()) errors.push_back(path + ".values: must not be empty");
      check(vals);
      if (errors.size() == before) out = ProfileFn::periodic(period, vals);
    } else if (type == "piecewise") {
      unknown_keys(j, path, {"type", "breakpoints", "values"});
      required("breakpoints");
      required("values");
      std::vector<double> bp, vals;
      number_list(j, "breakpoints", path, bp);
      number_list(j, "values", path, vals);
      if (vals.size() != bp.size() + 1) errors.push_back(path + ": needs exactly one more value than breakpoints");
      if (!std::is_sorted(bp.begin(), bp.end())) errors.push_back(path + ".breakpoints: must be sorted");
      check(vals);
      if (errors.size() == before) out = ProfileFn::piecewise(bp, vals);
    } else {
      errors.push_back(path + ".type: unknown profile type '" + type + "'");
    }
    return out;
  }
};

inline json profile_json(const ProfileFn& p) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, profile::Constant>) return {{"type", "constant"}, {"value", r.value}};
        else if constexpr (std::is_same_v<T, profile::TwoValued>) return {{"type", "two_valued"}, {"left", r.left}, {"right", r.right}};
        else if constexpr (std::is_same_v<T, profile::Periodic>) return {{"type", "periodic"}, {"period", r.period}, {"values", r.values}};
        else if constexpr (std::is_same_v<T, profile::PiecewiseConstant>)
          return {{"type", "piecewise"}, {"breakpoints", r.breakpoints}, {"values", r.values}};
        else throw PreconditionError("custom profiles cannot be serialized");
      },
      p.rep());
}

}  // namespace config_detail

/// Canonical JSON form with every default filled in.
inline nlohmann::json to_json(const RunConfig& c) {
  using nlohmann::json;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["chain"] = {{"alpha", config_detail::profile_json(c.chain.alpha_profile)},
                {"gamma", config_detail::profile_json(c.chain.gamma_profile)},
                {"delta", config_detail::profile_json(c.chain.delta_profile)}};
  json scan{{"x_decades", {c.scan.x_lo_decade, c.scan.x_hi_decade}},
            {"x_per_decade", c.scan.x_per_decade},
            {"delta", c.scan.delta},
            {"d", c.scan.d},
            {"condition", c.scan.condition},
            {"threads", c.scan.threads}};
  if (c.scan.recurrence_betas) scan["recurrence_betas"] = *c.scan.recurrence_betas;
  if (c.scan.transience_betas) scan["transience_betas"] = *c.scan.transience_betas;
  if (c.scan.beta) scan["beta"] = *c.scan.beta;
  j["scan"] = scan;
  j["thresholds"] = {{"alpha", c.thresholds.alpha}, {"beta", c.thresholds.beta}};
  if (c.mc) {
    json mc{{"seed", c.mc->seed},       {"n_paths", c.mc->n_paths}, {"n_steps", c.mc->n_steps},
            {"x0", c.mc->x0},           {"radius", c.mc->radius},   {"compact", {c.mc->compact_lo, c.mc->compact_hi}}};
    if (c.mc->tv)
      mc["tv"] = {{"x0_a", c.mc->tv->x0_a},
                  {"x0_b", c.mc->tv->x0_b},
                  {"time_points", c.mc->tv->time_points},
                  {"n_paths", c.mc->tv->n_paths},
                  {"bin_width", c.mc->tv->bin_width}};
    j["mc"] = mc;
  }
  if (c.simulate) j["simulate"] = {{"x0", c.simulate->x0}, {"n_steps", c.simulate->n_steps}, {"seed", c.simulate->seed}};
  j["output"] = {{"directory", c.output_directory}};
  return j;
}

/// Hash of the canonical form; recorded in every output header.
inline std::uint64_t config_hash(const RunConfig& c) { return io::fnv1a(to_json(c).dump()); }

/// Parses and validates; collects every problem before throwing
/// ValidationError.
inline RunConfig parse_config(const nlohmann::json& j) {
  using nlohmann::json;
  std::vector<std::string> errors;
  config_detail::Reader rd{errors};
  RunConfig cfg;
  if (!rd.object(j, "config")) throw ValidationError(errors);
  rd.unknown_keys(j, "config", {"schema_version", "chain", "scan", "thresholds", "mc", "simulate", "output"});

  if (!j.contains("schema_version")) {
    errors.push_back("schema_version: required");
  } else if (!j.at("schema_version").is_number_integer() || j.at("schema_version").get<int>() != kSchemaVersion) {
    errors.push_back("schema_version: unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  }

  using Range = config_detail::Reader::Range;
  if (!j.contains("chain")) {
    errors.push_back("chain: required");
  } else if (rd.object(j.at("chain"), "chain")) {
    const auto& c = j.at("chain");
    rd.unknown_keys(c, "chain", {"alpha", "gamma", "delta"});
    if (!c.contains("alpha")) errors.push_back("chain.alpha: required");
    else if (auto p = rd.profile(c.at("alpha"), "chain.alpha", Range::Alpha)) cfg.chain.alpha_profile = *p;
    if (c.contains("gamma")) {
      if (auto p = rd.profile(c.at("gamma"), "chain.gamma", Range::Positive)) cfg.chain.gamma_profile = *p;
    }
    if (c.contains("delta")) {
      if (auto p = rd.profile(c.at("delta"), "chain.delta", Range::Finite)) cfg.chain.delta_profile = *p;
    }
  }

  if (j.contains("scan") && rd.object(j.at("scan"), "scan")) {
    const auto& s = j.at("scan");
    rd.unknown_keys(s, "scan", {"x_decades", "x_per_decade", "delta", "d", "recurrence_betas", "transience_betas", "condition", "beta", "threads"});
    std::vector<double> dec{cfg.scan.x_lo_decade, cfg.scan.x_hi_decade};
    rd.number_list(s, "x_decades", "scan", dec);
    if (dec.size() != 2 || !(dec[1] - dec[0] >= 3.0)) errors.push_back("scan.x_decades: need [lo, hi] spanning at least three decades");
    else {
      cfg.scan.x_lo_decade = dec[0];
      cfg.scan.x_hi_decade = dec[1];
    }
    rd.number(s, "x_per_decade", "scan", cfg.scan.x_per_decade);
    if (cfg.scan.x_per_decade < 1) errors.push_back("scan.x_per_decade: must be at least 1");
    rd.number_list(s, "delta", "scan", cfg.scan.delta);
    rd.number_list(s, "d", "scan", cfg.scan.d);
    if (cfg.scan.delta.empty()) errors.push_back("scan.delta: must not be empty");
    if (cfg.scan.d.empty()) errors.push_back("scan.d: must not be empty");
    for (std::size_t i = 0; i < cfg.scan.delta.size(); ++i)
      if (!(cfg.scan.delta[i] > 0.0 && cfg.scan.delta[i] < 1.0) || (i > 0 && !(cfg.scan.delta[i] < cfg.scan.delta[i - 1]))) {
        errors.push_back("scan.delta: must be decreasing values in (0, 1)");
        break;
      }
    for (std::size_t i = 0; i < cfg.scan.d.size(); ++i)
      if (!(cfg.scan.d[i] >= 0.0) || (i > 0 && !(cfg.scan.d[i] < cfg.scan.d[i - 1]))) {
        errors.push_back("scan.d: must be decreasing nonnegative values");
        break;
      }
    for (const char* key : {"recurrence_betas", "transience_betas"}) {
      if (!s.contains(key)) continue;
      std::vector<double> b;
      rd.number_list(s, key, "scan", b);
      if (b.empty()) errors.push_back(std::string("scan.") + key + ": must not be empty");
      for (double v : b)
        if (!(v > 0.0 && v <= 1.0)) errors.push_back(std::string("scan.") + key + ": values must lie in (0, 1]");
      (std::string(key) == "recurrence_betas" ? cfg.scan.recurrence_betas : cfg.scan.transience_betas) = b;
    }
    if (s.contains("condition")) {
      if (!s.at("condition").is_string()) errors.push_back("scan.condition: expected a string");
      else {
        cfg.scan.condition = s.at("condition").get<std::string>();
        try {
          condition_from_string(cfg.scan.condition);
        } catch (const PreconditionError&) {
          errors.push_back("scan.condition: unknown condition '" + cfg.scan.condition + "'");
        }
      }
    }
    if (s.contains("beta")) {
      double b = 0.0;
      rd.number(s, "beta", "scan", b);
      cfg.scan.beta = b;
    }
    rd.number(s, "threads", "scan", cfg.scan.threads);
  }

  if (j.contains("thresholds") && rd.object(j.at("thresholds"), "thresholds")) {
    const auto& t = j.at("thresholds");
    rd.unknown_keys(t, "thresholds", {"alpha", "beta"});
    rd.number_list(t, "alpha", "thresholds", cfg.thresholds.alpha);
    rd.number_list(t, "beta", "thresholds", cfg.thresholds.beta);
    if (cfg.thresholds.alpha.empty()) errors.push_back("thresholds.alpha: must not be empty");
    for (double a : cfg.thresholds.alpha)
      if (!(a > 0.0 && a < 2.0)) errors.push_back("thresholds.alpha: value " + io::fmt(a) + " outside (0, 2)");
    for (double b : cfg.thresholds.beta)
      if (!(b > 0.0 && b <= 1.0)) errors.push_back("thresholds.beta: value " + io::fmt(b) + " outside (0, 1]");
  }

  if (j.contains("mc") && rd.object(j.at("mc"), "mc")) {
    const auto& m = j.at("mc");
    rd.unknown_keys(m, "mc", {"seed", "n_paths", "n_steps", "x0", "radius", "compact", "tv"});
    McConfig mc;
    if (!m.contains("seed")) errors.push_back("mc.seed: required when mc is present");
    rd.number(m, "seed", "mc", mc.seed);
    rd.number(m, "n_paths", "mc", mc.n_paths);
    rd.number(m, "n_steps", "mc", mc.n_steps);
    rd.number(m, "x0", "mc", mc.x0);
    rd.number(m, "radius", "mc", mc.radius);
    if (mc.n_paths == 0) errors.push_back("mc.n_paths: must be positive");
    if (mc.n_steps == 0) errors.push_back("mc.n_steps: must be positive");
    if (!(mc.radius >= 0.0)) errors.push_back("mc.radius: must be nonnegative");
    std::vector<double> compact{mc.compact_lo, mc.compact_hi};
    rd.number_list(m, "compact", "mc", compact);
    if (compact.size() != 2) errors.push_back("mc.compact: expected [lo, hi]");
    else {
      mc.compact_lo = compact[0];
      mc.compact_hi = compact[1];
    }
    if (m.contains("tv") && rd.object(m.at("tv"), "mc.tv")) {
      const auto& t = m.at("tv");
      rd.unknown_keys(t, "mc.tv", {"x0_a", "x0_b", "time_points", "n_paths", "bin_width"});
      TvConfig tv;
      rd.number(t, "x0_a", "mc.tv", tv.x0_a);
      rd.number(t, "x0_b", "mc.tv", tv.x0_b);
      rd.number_list(t, "time_points", "mc.tv", tv.time_points);
      rd.number(t, "n_paths", "mc.tv", tv.n_paths);
      rd.number(t, "bin_width", "mc.tv", tv.bin_width);
      if (tv.time_points.empty()) errors.push_back("mc.tv.time_points: must not be empty");
      for (std::size_t i = 0; i < tv.time_points.size(); ++i)
        if (tv.time_points[i] == 0 || (i > 0 && tv.time_points[i] <= tv.time_points[i - 1])) {
          errors.push_back("mc.tv.time_points: must be increasing positive integers");
          break;
        }
      if (tv.n_paths == 0) errors.push_back("mc.tv.n_paths: must be positive");
      if (!(tv.bin_width > 0.0)) errors.push_back("mc.tv.bin_width: must be positive");
      mc.tv = tv;
    }
    cfg.mc = mc;
  }

  if (j.contains("simulate") && rd.object(j.at("simulate"), "simulate")) {
    const auto& s = j.at("simulate");
    rd.unknown_keys(s, "simulate", {"x0", "n_steps", "seed"});
    SimulateConfig sim;
    if (!s.contains("seed")) errors.push_back("simulate.seed: required");
    rd.number(s, "x0", "simulate", sim.x0);
    rd.number(s, "n_steps", "simulate", sim.n_steps);
    rd.number(s, "seed", "simulate", sim.seed);
    if (sim.n_steps == 0) errors.push_back("simulate.n_steps: must be positive");
    cfg.simulate = sim;
  }

  if (j.contains("output") && rd.object(j.at("output"), "output")) {
    const auto& o = j.at("output");
    rd.unknown_keys(o, "output", {"directory"});
    if (o.contains("directory")) {
      if (!o.at("directory").is_string()) errors.push_back("output.directory: expected a string");
      else cfg.output_directory = o.at("directory").get<std::string>();
    }
  }

  if (!errors.empty()) throw ValidationError(errors);
  cfg.chain_json = to_json(cfg)["chain"];
  return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace stablike
