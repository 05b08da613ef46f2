// stablike command-line front end.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stablike/stablike.hpp"

namespace {

using namespace stablike;

// Single writer per output: a file under the configured directory, or stdout.
class Sink {
 public:
  Sink(const std::string& directory, const std::string& name) {
    if (directory.empty()) return;
    std::filesystem::create_directories(directory);
    const auto path = std::filesystem::path(directory) / name;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot write " + path.string());
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool to_stdout() const { return !file_; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::string config_path;
  std::string out_dir;  // overrides output.directory
  unsigned threads = 0;
};

RunConfig load(const Common& c) {
  auto cfg = load_config(c.config_path);
  if (!c.out_dir.empty()) cfg.output_directory = c.out_dir;
  return cfg;
}

unsigned threads_for(const Common& c, const RunConfig* cfg) {
  if (c.threads > 0) return c.threads;
  if (cfg && cfg->scan.threads > 0) return cfg->scan.threads;
  return resolve_threads(0);  // STABLIKE_THREADS, then hardware
}

int run_thresholds(const Common& c, std::vector<double> alphas, std::vector<double> betas) {
  std::optional<RunConfig> cfg;
  if (!c.config_path.empty()) cfg = load(c);
  if (alphas.empty()) alphas = cfg ? cfg->thresholds.alpha : ThresholdsConfig{}.alpha;
  if (betas.empty() && cfg) betas = cfg->thresholds.beta;
  for (double a : alphas)
    if (!(a > 0.0 && a < 2.0)) throw ValidationError({"alpha: value " + io::fmt(a) + " outside (0, 2)"});
  for (double b : betas)
    if (!(b > 0.0 && b <= 1.0)) throw ValidationError({"beta: value " + io::fmt(b) + " outside (0, 1]"});

  std::uint64_t hash = 0;
  if (cfg) {
    hash = config_hash(*cfg);
  } else {
    nlohmann::json j{{"alpha", alphas}, {"beta", betas}};
    hash = io::fnv1a(j.dump());
  }
  Sink sink(cfg ? cfg->output_directory : c.out_dir, "thresholds.csv");
  auto& os = sink.stream();
  io::provenance_line(os, hash);
  io::csv_row(os, {"alpha", "beta", "r1", "r2", "r2_error", "t", "t_error"});
  auto cell = [](const std::optional<ThresholdValue>& v, bool err) {
    if (!v) return std::string();
    return io::fmt(err ? v->est_abs_error : v->value);
  };
  for (double a : alphas) {
    const std::string r1s = io::fmt(r1(a));
    if (betas.empty()) {
      io::csv_row(os, {io::fmt(a), "", r1s, "", "", "", ""});
      continue;
    }
    for (double b : betas) {
      std::optional<ThresholdValue> r2v, tv;
      if (b < a) r2v = r2(a, b);
      if (b < 1.0) tv = t(a, b);
      io::csv_row(os, {io::fmt(a), io::fmt(b), r1s, cell(r2v, false), cell(r2v, true), cell(tv, false), cell(tv, true)});
    }
  }
  return 0;
}

int run_classify(const Common& c) {
  const auto cfg = load(c);
  auto settings = cfg.classify_settings();
  settings.threads = threads_for(c, &cfg);
  const auto result = classify(cfg.chain, settings);
  auto j = to_json(result);
  j["tool_version"] = kVersion;
  j["config_hash"] = io::hex(config_hash(cfg));
  {
    Sink sink(cfg.output_directory, "classification.json");
    sink.stream() << j.dump(2) << '\n';
  }
  std::cout << summary_line(result) << '\n';
  if (result.verdict == Verdict::Inconclusive && result.had_errors) return 2;
  return 0;
}

int run_drift_scan(const Common& c, std::string condition, std::optional<double> beta) {
  const auto cfg = load(c);
  if (condition.empty()) condition = cfg.scan.condition;
  if (!beta) beta = cfg.scan.beta;
  const auto id = condition_from_string(condition);
  ScanOptions opts;
  opts.threads = threads_for(c, &cfg);
  const auto rep = tail_scan(cfg.chain, cfg.grids(), id, {beta, std::nullopt}, opts);
  Sink sink(cfg.output_directory, "drift_scan.csv");
  auto& os = sink.stream();
  io::provenance_line(os, config_hash(cfg));
  write_scan_csv(os, rep);
  std::cerr << to_string(id) << ": tail sup " << io::fmt(rep.tail_sup_estimate) << ", tail inf " << io::fmt(rep.tail_inf_estimate)
            << ", threshold " << io::fmt(rep.threshold) << ", margin " << io::fmt(rep.margin) << ", scan error "
            << io::fmt(rep.scan_error) << (rep.supports() ? " (supports)" : rep.inconclusive() ? " (inconclusive)" : " (fails)") << '\n';
  return 0;
}

int run_simulate(const Common& c) {
  const auto cfg = load(c);
  if (!cfg.simulate) throw ValidationError({"simulate: section required for this subcommand"});
  const auto& s = *cfg.simulate;
  const auto traj = simulate(cfg.chain, s.x0, s.n_steps, s.seed);
  Sink sink(cfg.output_directory, "trajectory.csv");
  auto& os = sink.stream();
  io::provenance_line(os, config_hash(cfg));
  write_trajectory_csv(os, traj);
  return 0;
}

int run_mc_diagnose(const Common& c) {
  const auto cfg = load(c);
  if (!cfg.mc) throw ValidationError({"mc: section required for this subcommand"});
  const auto& m = *cfg.mc;
  const unsigned threads = threads_for(c, &cfg);
  const auto hash = config_hash(cfg);
  {
    const auto ret = return_stats(cfg.chain, m.x0, m.radius, m.n_steps, m.n_paths, m.seed, threads);
    Sink sink(cfg.output_directory, "mc_return.csv");
    io::provenance_line(sink.stream(), hash);
    write_stats_csv(sink.stream(), ret);
  }
  if (m.n_steps >= 1000) {
    const auto occ = occupation(cfg.chain, m.x0, m.compact_lo, m.compact_hi, m.n_steps, m.n_paths, m.seed, threads);
    Sink sink(cfg.output_directory, "mc_occupation.csv");
    if (sink.to_stdout()) std::cout << '\n';
    io::provenance_line(sink.stream(), hash);
    write_stats_csv(sink.stream(), occ);
  }
  if (m.tv) {
    const auto tv = tv_convergence(cfg.chain, m.tv->x0_a, m.tv->x0_b, m.tv->time_points, m.tv->n_paths, m.tv->bin_width, m.seed, threads);
    Sink sink(cfg.output_directory, "mc_tv.csv");
    if (sink.to_stdout()) std::cout << '\n';
    io::provenance_line(sink.stream(), hash);
    write_tv_csv(sink.stream(), tv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stablike: stable-like Markov chains, drift criteria and Monte Carlo diagnostics"};
  app.set_version_flag("--version", std::string(stablike::kVersion));
  app.require_subcommand(1);

  Common common;
  app.add_option("--threads", common.threads, "worker cap (default: STABLIKE_THREADS, then hardware)");

  auto* thr = app.add_subcommand("thresholds", "tabulate R1, R2 and T");
  std::vector<double> alphas, betas;
  thr->add_option("--config,-c", common.config_path, "run configuration (JSON)")->check(CLI::ExistingFile);
  thr->add_option("--alpha", alphas, "alpha grid (overrides the config)")->delimiter(',');
  thr->add_option("--beta", betas, "beta grid (overrides the config)")->delimiter(',');
  thr->add_option("--out-dir,-o", common.out_dir, "write into this directory instead of stdout");

  auto* cls = app.add_subcommand("classify", "classify a chain with the drift criteria");
  auto* scan = app.add_subcommand("drift-scan", "evaluate one drift condition over the scan grid");
  auto* sim = app.add_subcommand("simulate", "simulate one trajectory");
  auto* mcd = app.add_subcommand("mc-diagnose", "return statistics, occupation and TV convergence");
  for (auto* sc : {cls, scan, sim, mcd}) {
    sc->add_option("--config,-c", common.config_path, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sc->add_option("--out-dir,-o", common.out_dir, "write into this directory instead of stdout");
    sc->add_option("--threads", common.threads, "worker cap");
  }
  thr->add_option("--threads", common.threads, "worker cap");
  std::string condition;
  std::optional<double> beta;
  scan->add_option("--condition", condition, "condition id (C12 ... F25)");
  scan->add_option("--beta", beta, "beta for power-type conditions");

  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("-", 0) == 0) continue;
    bool known = false;
    for (const auto* sc : app.get_subcommands({})) known = known || sc->get_name() == a;
    if (!known) {
      std::cerr << "error: unknown subcommand '" << a << "'\n\n" << app.help();
      return 1;
    }
    break;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*thr) return run_thresholds(common, alphas, betas);
    if (*cls) return run_classify(common);
    if (*scan) return run_drift_scan(common, condition, beta);
    if (*sim) return run_simulate(common);
    if (*mcd) return run_mc_diagnose(common);
  } catch (const stablike::ValidationError& e) {
    std::cerr << "invalid configuration:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
