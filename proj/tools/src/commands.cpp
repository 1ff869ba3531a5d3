#include "commands.hpp"

#include "artifacts.hpp"

#include <schrospec/checkpoint.hpp>
#include <schrospec/csv.hpp>
#include <schrospec/errors.hpp>
#include <schrospec/networks.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <iostream>
#include <map>
#include <memory>

namespace schrospec::cli {

namespace {

using nlohmann::json;

TrainConfig training_config(const RunConfig& cfg, bool transfer) {
  TrainConfig t = cfg.training;
  t.seed = cfg.seed;
  t.deterministic = cfg.deterministic;
  if (transfer) t.eq_loss_threshold = cfg.transfer_eq_loss_threshold;
  return t;
}

ProblemFamily family_of(const RunConfig& cfg) {
  ProblemFamily f;
  f.omega_sq = cfg.problem.omega_sq;
  f.lambda = cfg.problem.lambda;
  f.e_init = cfg.problem.e_init;
  f.a = cfg.problem.a;
  f.domain_override = cfg.problem.domain_override;
  return f;
}

/// Runs `fn(i)` for i in [0, count) on up to `jobs` threads, results in order.
template <class Fn>
auto parallel_map(std::size_t count, int jobs, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> results;
  results.reserve(count);
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t begin = 0; begin < count; begin += width) {
    std::vector<std::future<R>> batch;
    for (std::size_t i = begin; i < std::min(count, begin + width); ++i) {
      batch.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async, fn, i));
    }
    for (auto& f : batch) results.push_back(f.get());
  }
  return results;
}

std::vector<double> uniform_grid(double half_width, std::size_t points) {
  std::vector<double> xs(points);
  const double step = 2.0 * half_width / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) xs[i] = -half_width + step * static_cast<double>(i);
  xs.back() = half_width;
  return xs;
}

std::function<Validator(const ProblemSpec&)> validator_factory(const RunConfig& cfg) {
  if (cfg.training.validate_every <= 0) return {};
  return [&cfg](const ProblemSpec& spec) -> Validator {
    const auto ref = std::make_shared<Reference>(make_reference(spec.omega_sq, spec.lambda, spec.n + 1, cfg));
    const auto xs = std::make_shared<std::vector<double>>(uniform_grid(spec.half_width, cfg.fidelity.points));
    auto target = std::make_shared<std::vector<double>>();
    for (double x : *xs) target->push_back(ref->psi(spec.n, x));
    return [xs, target](const ModelPair& model) {
      return overlap_squared(*target, psi_values(model, *xs));
    };
  };
}

/// Bookkeeping shared by solve and sweep: artifacts per state, run.json and
/// summary.csv rewritten after every state.
class RunRecorder {
public:
  RunRecorder(const CommandContext& ctx, std::string command, bool lambda_suffix)
      : ctx_(ctx), lambda_suffix_(lambda_suffix) {
    summary_.command = std::move(command);
    summary_.config_json = to_json(ctx.cfg);
    const fs::path previous = ctx.run_dir / "run.json";
    if (ctx.resume && fs::exists(previous)) {
      RunSummary old = read_run_json(previous);
      if (old.command != summary_.command) {
        throw ConfigError("cannot resume a '" + old.command + "' run as '" + summary_.command + "'");
      }
      if (!same_problem(old.config_json, summary_.config_json)) {
        throw ConfigError("cannot resume: the configuration differs from the recorded run");
      }
      for (auto& r : old.states) {
        if (r.status != TrainStatus::NumericFailure) summary_.states.push_back(std::move(r));
      }
    }
  }

  std::optional<SolvedState> resume(int n, double lambda) const {
    for (const auto& r : summary_.states) {
      if (r.n == n && r.lambda == lambda) return load_solved_state(ctx_.run_dir, r);
    }
    return std::nullopt;
  }

  void record(const SolvedState& st, std::ostream& out) {
    const std::optional<double> suffix = lambda_suffix_ ? std::optional(st.spec.lambda) : std::nullopt;
    StateRecord r = make_record(st, suffix);
    write_trace(ctx_.run_dir / r.trace, st.result.trace);
    if (st.snapshot) write_snapshot(ctx_.run_dir / r.snapshot, *st.snapshot);
    save_checkpoint(ctx_.run_dir / r.checkpoint, st.result.model, st.spec);
    std::erase_if(summary_.states, [&](const StateRecord& o) { return o.n == r.n && o.lambda == r.lambda; });
    summary_.states.push_back(r);
    std::stable_sort(summary_.states.begin(), summary_.states.end(), [](const auto& a, const auto& b) {
      return a.lambda != b.lambda ? a.lambda < b.lambda : a.n < b.n;
    });
    out << "n=" << r.n << " lambda=" << format_double(r.lambda) << " E=" << format_double(r.energy)
        << " status=" << status_name(r.status) << " epochs=" << r.epochs << '\n';
    flush();
  }

  int finish(int exit_code) {
    summary_.exit_code = exit_code;
    flush();
    return exit_code;
  }

  const std::vector<StateRecord>& states() const { return summary_.states; }

private:
  static bool same_problem(const std::string& a, const std::string& b) {
    json ja = json::parse(a), jb = json::parse(b);
    ja.erase("output");
    jb.erase("output");
    return ja == jb;
  }

  void flush() {
    write_run_json(ctx_.run_dir / "run.json", summary_);
    write_summary_csv(ctx_.run_dir / "summary.csv", summary_.states);
  }

  const CommandContext& ctx_;
  bool lambda_suffix_;
  RunSummary summary_;
};

int exit_code_for(const std::vector<StateRecord>& states, bool complete) {
  for (const auto& r : states) {
    if (r.status == TrainStatus::NumericFailure) return kExitNumeric;
  }
  for (const auto& r : states) {
    if (r.status != TrainStatus::Converged) return kExitNotConverged;
  }
  return complete ? kExitOk : kExitNotConverged;
}

std::vector<double> lambdas_of(const RunConfig& cfg) {
  return cfg.problem.lambdas.empty() ? std::vector<double>{cfg.problem.lambda} : cfg.problem.lambdas;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

Reference make_reference(double omega_sq, double lambda, int states, const RunConfig& cfg) {
  Reference ref;
  if (lambda == 0.0 && omega_sq > 0.0) {
    const double omega = std::sqrt(omega_sq);
    ref.source = "analytic";
    for (int n = 0; n < states; ++n) ref.energies.push_back((n + 0.5) * omega);
    ref.psi = [omega](int n, double x) { return harmonic_wavefunction(n, omega, x); };
    return ref;
  }
  OracleOptions opts;
  opts.grid_points = cfg.oracle.grid_points;
  const double X = cfg.oracle.half_width.value_or(default_oracle_half_width(states, lambda));
  auto sol = std::make_shared<OracleSolution>(diagonalize(omega_sq, lambda, X, states, opts));
  ref.source = "oracle";
  ref.energies = sol->energies;
  ref.psi = [sol](int n, double x) { return sol->evaluate(static_cast<std::size_t>(n), x); };
  return ref;
}

int cmd_solve(const CommandContext& ctx, std::ostream& out) {
  prepare_run_dir(ctx.run_dir, ctx.force, ctx.resume);
  RunRecorder rec(ctx, "solve", false);

  CascadeHooks hooks;
  hooks.resume = [&](int n) { return rec.resume(n, ctx.cfg.problem.lambda); };
  hooks.on_state = [&](const SolvedState& st) { rec.record(st, out); };
  hooks.validator_for = validator_factory(ctx.cfg);

  const CascadeResult res = train_cascade(family_of(ctx.cfg), training_config(ctx.cfg, false),
                                          ctx.cfg.problem.n_max, hooks);
  std::vector<StateRecord> states;
  for (const auto& st : res.states) states.push_back(make_record(st, std::nullopt));
  return rec.finish(exit_code_for(states, res.complete));
}

int cmd_sweep(const CommandContext& ctx, const fs::path& base_dir, std::ostream& out) {
  const RunSummary base = read_run_json(base_dir / "run.json");
  const std::vector<double> lambdas = sweep_lambdas(ctx.cfg);
  const double first = *std::min_element(lambdas.begin(), lambdas.end());
  const int n_max = ctx.cfg.problem.n_max;

  // The base coupling closest to the first sweep value at which every state
  // up to n_max converged.
  std::map<double, std::vector<const StateRecord*>> by_lambda;
  for (const auto& r : base.states) {
    if (r.status == TrainStatus::Converged && r.n <= n_max) by_lambda[r.lambda].push_back(&r);
  }
  std::optional<double> base_lambda;
  for (const auto& [lambda, recs] : by_lambda) {
    if (static_cast<int>(recs.size()) != n_max + 1) continue;
    if (!base_lambda || std::abs(lambda - first) < std::abs(*base_lambda - first)) base_lambda = lambda;
  }
  if (!base_lambda) {
    throw ConfigError("base run " + base_dir.string() + " has no coupling with converged states 0.." +
                      std::to_string(n_max));
  }
  std::vector<ModelPair> seeds(static_cast<std::size_t>(n_max) + 1);
  for (const StateRecord* r : by_lambda[*base_lambda]) {
    const Checkpoint ck = load_checkpoint(base_dir / r->checkpoint);
    if (ck.spec.omega_sq != ctx.cfg.problem.omega_sq) {
      throw ConfigError("base checkpoint omega_sq differs from the sweep's");
    }
    seeds[static_cast<std::size_t>(r->n)] = ck.model;
  }

  prepare_run_dir(ctx.run_dir, ctx.force, ctx.resume);
  RunRecorder rec(ctx, "sweep", true);
  SweepHooks hooks;
  hooks.resume = [&](int n, double lambda) { return rec.resume(n, lambda); };
  hooks.on_state = [&](double, const SolvedState& st) { rec.record(st, out); };
  hooks.validator_for = validator_factory(ctx.cfg);

  const SweepResult res = sweep_lambda(seeds, *base_lambda, family_of(ctx.cfg), lambdas,
                                       training_config(ctx.cfg, true), n_max, hooks);
  std::vector<StateRecord> states;
  bool complete = true;
  for (const auto& at : res.states) {
    complete = complete && static_cast<int>(at.size()) == n_max + 1;
    for (const auto& st : at) states.push_back(make_record(st, st.spec.lambda));
  }
  return rec.finish(exit_code_for(states, complete));
}

int cmd_oracle(const CommandContext& ctx, std::ostream& out) {
  ensure_dir(ctx.run_dir);
  const RunConfig& cfg = ctx.cfg;
  const std::vector<double> lambdas = lambdas_of(cfg);
  const int states = cfg.problem.n_max + 1;
  OracleOptions opts;
  opts.grid_points = cfg.oracle.grid_points;

  const auto solutions = parallel_map(lambdas.size(), ctx.jobs, [&](std::size_t i) {
    const double X = cfg.oracle.half_width.value_or(default_oracle_half_width(states, lambdas[i]));
    return diagonalize(cfg.problem.omega_sq, lambdas[i], X, states, opts);
  });

  CsvTable energies;
  energies.header = {"n", "lambda", "omega_sq", "E", "half_width", "finest_grid_points"};
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const OracleSolution& sol = solutions[i];
    for (int n = 0; n < states; ++n) {
      energies.rows.push_back({std::to_string(n), format_double(lambdas[i]), format_double(cfg.problem.omega_sq),
                               format_double(sol.energies[static_cast<std::size_t>(n)]),
                               format_double(sol.grid.back()), std::to_string(sol.finest_grid_points)});
      out << "n=" << n << " lambda=" << format_double(lambdas[i])
          << " E=" << format_double(sol.energies[static_cast<std::size_t>(n)]) << '\n';
    }
    CsvTable psi;
    psi.header.push_back("x");
    for (int n = 0; n < states; ++n) psi.header.push_back("psi_" + std::to_string(n));
    for (std::size_t j = 0; j < sol.grid.size(); ++j) {
      std::vector<std::string> row{format_double(sol.grid[j])};
      for (const auto& wf : sol.wavefunctions) row.push_back(format_double(wf[j]));
      psi.rows.push_back(std::move(row));
    }
    write_csv(ctx.run_dir / ("oracle_psi_lambda" + format_double(lambdas[i]) + ".csv"), psi);
  }
  write_csv(ctx.run_dir / "oracle_energies.csv", energies);
  return kExitOk;
}

int cmd_compare(const CommandContext& ctx, std::ostream& out) {
  const RunSummary run = read_run_json(ctx.run_dir / "run.json");
  const RunConfig& cfg = ctx.cfg;

  std::vector<const StateRecord*> records;
  for (const auto& r : run.states) {
    if (r.status != TrainStatus::NumericFailure) records.push_back(&r);
  }
  // One reference per coupling, sized for its highest state.
  std::map<std::pair<double, double>, int> needed;
  for (const StateRecord* r : records) {
    int& k = needed[{r->omega_sq, r->lambda}];
    k = std::max(k, r->n + 1);
  }
  std::vector<std::pair<double, double>> keys;
  for (const auto& [key, k] : needed) keys.push_back(key);
  const auto refs = parallel_map(keys.size(), ctx.jobs, [&](std::size_t i) {
    return make_reference(keys[i].first, keys[i].second, needed[keys[i]], cfg);
  });
  std::map<std::pair<double, double>, const Reference*> ref_of;
  for (std::size_t i = 0; i < keys.size(); ++i) ref_of[keys[i]] = &refs[i];

  struct Row {
    double e_ref;
    FidelityReport fid;
  };
  const auto rows = parallel_map(records.size(), ctx.jobs, [&](std::size_t i) {
    const StateRecord& r = *records[i];
    const Reference& ref = *ref_of.at({r.omega_sq, r.lambda});
    const ModelPair model = load_checkpoint(ctx.run_dir / r.checkpoint).model;
    const BatchFunction psi_ref = [&ref, n = r.n](std::span<const double> xs) {
      std::vector<double> v;
      v.reserve(xs.size());
      for (double x : xs) v.push_back(ref.psi(n, x));
      return v;
    };
    const BatchFunction psi_pinn = [&model](std::span<const double> xs) { return psi_values(model, xs); };
    return Row{ref.energies[static_cast<std::size_t>(r.n)], fidelity(psi_ref, psi_pinn, r.half_width, cfg.fidelity)};
  });

  const bool perturbative = std::all_of(records.begin(), records.end(),
                                        [](const StateRecord* r) { return r->omega_sq == 1.0; });
  CsvTable t;
  t.header = {"n", "lambda", "E_pinn", "E_ref", "reference", "err_E", "fidelity_mean", "fidelity_std", "status"};
  if (perturbative) {
    t.header.push_back("E_pert");
    t.header.push_back("err_pert");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const StateRecord& r = *records[i];
    const Row& row = rows[i];
    const double err = energy_error(row.e_ref, r.energy);
    std::vector<std::string> cells{std::to_string(r.n), format_double(r.lambda), format_double(r.energy),
                                   format_double(row.e_ref), ref_of.at({r.omega_sq, r.lambda})->source,
                                   format_double(err), format_double(row.fid.mean), format_double(row.fid.std),
                                   status_name(r.status)};
    if (perturbative) {
      const double e_pert = perturbative_energy(r.n, r.lambda);
      cells.push_back(format_double(e_pert));
      cells.push_back(format_double((e_pert - r.energy) / e_pert));
    }
    t.rows.push_back(std::move(cells));
    out << "n=" << r.n << " lambda=" << format_double(r.lambda) << " err_E=" << format_double(err)
        << " fidelity=" << format_double(row.fid.mean) << '\n';
  }
  write_csv(ctx.run_dir / "compare.csv", t);
  return kExitOk;
}

int cmd_fit(const CommandContext& ctx, const std::optional<fs::path>& input, std::ostream& out) {
  ensure_dir(ctx.run_dir);
  const RunConfig& cfg = ctx.cfg;
  std::vector<EnergySample> samples;

  if (input) {
    const CsvTable t = read_csv(*input);
    const std::size_t cn = t.column("n"), cl = t.column("lambda"), ce = t.column("E"), cs = t.column("source");
    const bool has_omega = t.has_column("omega_sq");
    const std::size_t co = has_omega ? t.column("omega_sq") : 0;
    for (const auto& row : t.rows) {
      if (row.size() != t.header.size()) throw ConfigError("ragged row in " + input->string());
      samples.push_back({parse_int(row[cn]), parse_double(row[cl]), parse_double(row[ce]), row[cs],
                         has_omega ? parse_double(row[co]) : 1.0});
    }
  } else {
    const std::vector<double> lambdas = sweep_lambdas(cfg);
    const int states = cfg.problem.n_max + 1;
    OracleOptions opts;
    opts.grid_points = cfg.oracle.grid_points;
    std::vector<std::pair<double, double>> jobs;
    for (double omega_sq : {1.0, 0.0}) {
      for (double lambda : lambdas) jobs.emplace_back(omega_sq, lambda);
    }
    const auto energies = parallel_map(jobs.size(), ctx.jobs, [&](std::size_t i) {
      const auto [omega_sq, lambda] = jobs[i];
      const double X = cfg.oracle.half_width.value_or(default_oracle_half_width(states, lambda));
      return diagonalize(omega_sq, lambda, X, states, opts).energies;
    });
    CsvTable t;
    t.header = {"n", "lambda", "E", "source", "omega_sq"};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      for (int n = 0; n < states; ++n) {
        const double e = energies[i][static_cast<std::size_t>(n)];
        samples.push_back({n, jobs[i].second, e, "oracle", jobs[i].first});
        t.rows.push_back({std::to_string(n), format_double(jobs[i].second), format_double(e), "oracle",
                          format_double(jobs[i].first)});
      }
    }
    write_csv(ctx.run_dir / "energies.csv", t);
  }

  const ScalingAnalysis analysis = analyze_scaling(samples, cfg.cutoffs);
  if (analysis.fits.empty()) throw FitError("no region has enough points to fit");

  CsvTable fits;
  fits.header = {"n", "region", "a", "b", "points", "residual"};
  for (const auto& f : analysis.fits) {
    fits.rows.push_back({std::to_string(f.n), std::string(region_name(f.region)), format_double(f.a),
                         format_double(f.b), std::to_string(f.points), format_double(f.residual)});
    out << "n=" << f.n << " region=" << region_name(f.region) << " a=" << format_double(f.a)
        << " b=" << format_double(f.b) << '\n';
  }
  write_csv(ctx.run_dir / "fits.csv", fits);

  CsvTable critical;
  critical.header = {"n", "lambda_c", "E_c"};
  for (const auto& c : analysis.critical) {
    critical.rows.push_back({std::to_string(c.n), format_double(c.lambda_c), format_double(c.e_c)});
    out << "n=" << c.n << " lambda_c=" << format_double(c.lambda_c) << " E_c=" << format_double(c.e_c) << '\n';
  }
  write_csv(ctx.run_dir / "critical.csv", critical);

  // Every data point, and each fit line on 64 log-spaced couplings spanning
  // the data of its n.
  CsvTable plot;
  plot.header = {"n", "series", "omega_sq", "lambda", "E"};
  for (const auto& s : samples) {
    plot.rows.push_back({std::to_string(s.n), "data_" + s.source, format_double(s.omega_sq), format_double(s.lambda),
                         format_double(s.energy)});
  }
  for (const auto& f : analysis.fits) {
    double lo = INFINITY, hi = 0.0;
    for (const auto& s : samples) {
      if (s.n == f.n && s.lambda > 0.0) {
        lo = std::min(lo, s.lambda);
        hi = std::max(hi, s.lambda);
      }
    }
    const double omega_sq = f.region == Region::Quartic ? 0.0 : 1.0;
    for (int i = 0; i < 64; ++i) {
      const double lambda = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / 63.0);
      plot.rows.push_back({std::to_string(f.n), "fit_" + std::string(region_name(f.region)), format_double(omega_sq),
                           format_double(lambda), format_double(f.predict(lambda))});
    }
  }
  write_csv(ctx.run_dir / "fit_plot.csv", plot);
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neural eigenstate solver for the anharmonic oscillator"};
  app.require_subcommand(1);

  std::string preset_name = "harmonic";
  std::optional<std::string> config_path;
  std::vector<std::string> overrides;
  std::optional<std::string> run_dir;
  std::optional<std::uint64_t> seed;
  bool force = false, resume = false, print_config = false;
  int jobs = 1;
  std::string base_dir;
  std::optional<std::string> input;

  const auto common = [&](CLI::App* sub, bool training) {
    sub->add_option("--preset", preset_name, "harmonic, anharmonic, double-well or quartic");
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--set", overrides, "Override one field, e.g. training.max_epochs=5000");
    sub->add_option("--run-dir", run_dir, "Output directory (else config, else $SCHROSPEC_RUN_DIR)");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_flag("--print-config", print_config, "Print the resolved config and exit");
    if (training) {
      sub->add_flag("--force", force, "Overwrite artifacts in a non-empty run directory");
      sub->add_flag("--resume", resume, "Continue an interrupted run in place");
    } else {
      sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    }
  };
  auto* solve = app.add_subcommand("solve", "Train states 0..n_max at one coupling");
  common(solve, true);
  auto* sweep = app.add_subcommand("sweep", "Transfer-learn a coupling sweep from a solved run");
  common(sweep, true);
  sweep->add_option("--base-dir", base_dir, "Run directory of the base solve")->required();
  auto* oracle = app.add_subcommand("oracle", "Finite-difference reference energies and wavefunctions");
  common(oracle, false);
  auto* compare = app.add_subcommand("compare", "Energy error and fidelity of a run against references");
  common(compare, false);
  auto* fit = app.add_subcommand("fit", "Log-log scaling fits and critical couplings");
  common(fit, false);
  fit->add_option("--input", input, "CSV with n,lambda,E,source[,omega_sq]; default: oracle energies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    CommandContext ctx;
    ctx.cfg = preset(preset_name);
    if (config_path) apply_config_file(ctx.cfg, *config_path);
    for (const auto& o : overrides) apply_override(ctx.cfg, o);
    if (seed) apply_override(ctx.cfg, "seed=" + std::to_string(*seed));
    ctx.cfg.validate();
    if (print_config) {
      out << to_json(ctx.cfg) << '\n';
      return kExitOk;
    }
    if (run_dir) {
      ctx.run_dir = *run_dir;
    } else if (ctx.cfg.run_dir) {
      ctx.run_dir = *ctx.cfg.run_dir;
    } else if (const char* env = std::getenv("SCHROSPEC_RUN_DIR"); env && *env) {
      ctx.run_dir = env;
    } else {
      throw ConfigError("no run directory: pass --run-dir, set output.run_dir, or set SCHROSPEC_RUN_DIR");
    }
    if (force && resume) throw ConfigError("--force and --resume are mutually exclusive");
    ctx.force = force;
    ctx.resume = resume;
    ctx.jobs = jobs;

    if (solve->parsed()) return cmd_solve(ctx, out);
    if (sweep->parsed()) return cmd_sweep(ctx, base_dir, out);
    if (oracle->parsed()) return cmd_oracle(ctx, out);
    if (compare->parsed()) return cmd_compare(ctx, out);
    return cmd_fit(ctx, input ? std::optional<fs::path>(*input) : std::nullopt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CheckpointError& e) {
    err << "checkpoint error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FitError& e) {
    err << "fit error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const OracleError& e) {
    err << "oracle error: " << e.what() << '\n';
    return e.kind() == OracleError::Kind::NoConvergence ? kExitNumeric : kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric error in " << e.term() << ": " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DegenerateInputError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace schrospec::cli
