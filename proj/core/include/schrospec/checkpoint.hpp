#pragma once

#include "schrospec/networks.hpp"
#include "schrospec/problem.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace schrospec {

/// Binary checkpoint layout (all integers and floats little-endian):
///
///   magic      8 bytes  "SCHRSPCK"
///   version    u32      kCheckpointVersion
///   metadata   f64 omega_sq, f64 lambda, i32 n, i32 s, f64 half_width,
///              f64 e_init, f64 a
///   2 x network (psi_net then energy_net):
///     u32 layer count L+1, L+1 x u32 layer dims,
///     f64 parameters in layer order, weights row-major then biases
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelPair model;
  ProblemSpec spec;
};

/// Throws CheckpointError(Io) when the file cannot be written.
void save_checkpoint(const std::filesystem::path& path, const ModelPair& model,
                     const ProblemSpec& spec);

/// Throws CheckpointError with kind Io, Format (bad magic), Version,
/// Truncated, or Shape (inconsistent or non-model layer dims).
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// `<run_dir>/ckpt_n<n>_lambda<lambda>.bin`, lambda in shortest round-trip form.
std::filesystem::path checkpoint_path(const std::filesystem::path& run_dir, int n, double lambda);

}  // namespace schrospec
