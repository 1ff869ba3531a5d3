#pragma once

#include "config.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace schrospec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr int kExitNumeric = 4;

struct CommandContext {
  RunConfig cfg;
  std::filesystem::path run_dir;
  bool force = false;
  bool resume = false;
  int jobs = 1;
};

/// Reference energies and wavefunctions for one (omega_sq, lambda): exact
/// Hermite functions for the pure harmonic case, the oracle otherwise.
struct Reference {
  std::string source;  ///< "analytic" or "oracle"
  std::vector<double> energies;
  std::function<double(int n, double x)> psi;
};

Reference make_reference(double omega_sq, double lambda, int states, const RunConfig& cfg);

int cmd_solve(const CommandContext& ctx, std::ostream& out);
int cmd_sweep(const CommandContext& ctx, const std::filesystem::path& base_dir, std::ostream& out);
int cmd_oracle(const CommandContext& ctx, std::ostream& out);
int cmd_compare(const CommandContext& ctx, std::ostream& out);
/// Fits energies from `input` (n,lambda,E,source[,omega_sq]) or, without an
/// input, from oracle energies on the sweep grid for both families.
int cmd_fit(const CommandContext& ctx, const std::optional<std::filesystem::path>& input,
            std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schrospec::cli
