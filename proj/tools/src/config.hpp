#pragma once

#include <schrospec/analysis.hpp>
#include <schrospec/metrics.hpp>
#include <schrospec/oracle.hpp>
#include <schrospec/trainer.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace schrospec::cli {

inline constexpr int kConfigSchemaVersion = 1;

struct ProblemConfig {
  double omega_sq = 1.0;
  double lambda = 0.0;
  std::vector<double> lambdas;  ///< sweep list; empty means the default grid
  int n_max = 5;
  double e_init = 0.0;
  double a = 0.8;
  std::optional<double> domain_override;  ///< full width L for every state
};

struct OracleConfig {
  int grid_points = 4001;
  std::optional<double> half_width;
};

/// Every knob of a run. Defaults are the full-size settings; presets and the
/// config file adjust them.
struct RunConfig {
  ProblemConfig problem;
  TrainConfig training;
  /// Equation threshold that replaces training.eq_loss_threshold for
  /// transfer-initialized runs.
  double transfer_eq_loss_threshold = 2e-5;
  OracleConfig oracle;
  FidelityOptions fidelity;
  RegionCutoffs cutoffs;
  std::optional<std::filesystem::path> run_dir;
  std::uint64_t seed = 0;
  bool deterministic = true;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

const std::vector<std::string>& preset_names();

/// Defaults, then the named preset's changes. Throws ConfigError for an
/// unknown name.
RunConfig preset(std::string_view name);

/// Applies a JSON config document on top of `cfg`. Unknown keys and a
/// missing or unsupported schema_version are config errors.
void apply_config_text(RunConfig& cfg, std::string_view json_text, const std::string& origin);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Applies one `section.key=value` override, e.g. training.max_epochs=5000.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// The resolved configuration as a JSON document (the same schema the loader
/// accepts).
std::string to_json(const RunConfig& cfg);

/// Couplings a sweep visits.
std::vector<double> sweep_lambdas(const RunConfig& cfg);

}  // namespace schrospec::cli
