#pragma once

#include <schrospec/losses.hpp>
#include <schrospec/trainer.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace schrospec::cli {

namespace fs = std::filesystem;

/// File-name stem for one state: "n3" in a solve run, "n3_lambda0.64" in a
/// sweep.
std::string state_stem(int n, std::optional<double> lambda);

fs::path trace_path(const fs::path& dir, int n, std::optional<double> lambda);
fs::path snapshot_path(const fs::path& dir, int n, std::optional<double> lambda);

/// epoch, the seven losses, total, E, and fidelity when any row has one.
void write_trace(const fs::path& path, const TrainTrace& trace);
/// x, psi on the snapshot grid.
void write_snapshot(const fs::path& path, const ArchivedState& state);
ArchivedState read_snapshot(const fs::path& path, int n, double energy);

std::string status_name(TrainStatus status);
TrainStatus parse_status(const std::string& name);

/// One trained state as recorded in the run summary.
struct StateRecord {
  int n = 0;
  double lambda = 0.0;
  double omega_sq = 1.0;
  double half_width = 0.0;
  double energy = 0.0;
  TrainStatus status = TrainStatus::NotConverged;
  int epochs = 0;
  std::optional<int> converged_epoch;
  LossTerms losses;
  double total = 0.0;
  std::string failure;
  std::string checkpoint;  ///< file names relative to the run directory
  std::string trace;
  std::string snapshot;
};

StateRecord make_record(const SolvedState& st, std::optional<double> lambda_suffix);

/// n, lambda, omega_sq, E, status, epochs, the seven final losses, total.
void write_summary_csv(const fs::path& path, const std::vector<StateRecord>& records);

struct RunSummary {
  std::string command;
  std::string config_json;
  std::vector<StateRecord> states;
  int exit_code = 0;
};

void write_run_json(const fs::path& path, const RunSummary& summary);
/// Throws ConfigError when the file is missing or malformed.
RunSummary read_run_json(const fs::path& path);

/// Creates `dir` if needed. A non-empty directory is a config error unless
/// `force` (clears previous artifacts) or `resume` (keeps them) is set.
void prepare_run_dir(const fs::path& dir, bool force, bool resume);

/// Rebuilds a converged state from its checkpoint and snapshot.
SolvedState load_solved_state(const fs::path& dir, const StateRecord& record);

}  // namespace schrospec::cli
