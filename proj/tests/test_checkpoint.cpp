#include <schrospec/checkpoint.hpp>
#include <schrospec/errors.hpp>
#include <schrospec/losses.hpp>
#include <schrospec/trainer.hpp>

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

using namespace schrospec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("schrospec_ckpt_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

CheckpointError::Kind load_error(const fs::path& p) {
  try {
    load_checkpoint(p);
  } catch (const CheckpointError& e) {
    return e.kind();
  }
  FAIL("expected a CheckpointError");
  return CheckpointError::Kind::Io;
}

ProblemSpec sample_spec() {
  ProblemSpec spec;
  spec.omega_sq = 1.0;
  spec.lambda = 0.64;
  spec.n = 3;
  spec.s = -1;
  spec.half_width = 6.5;
  spec.e_init = 2.25;
  spec.a = 0.8;
  return spec;
}

}  // namespace

TEST_CASE("checkpoint round trip is bit-exact") {
  TempDir dir;
  const ModelPair m = init_model(ModelShape{{3, 24}, {2, 12}}, 77);
  const ProblemSpec spec = sample_spec();
  const fs::path p = dir.path / "a.bin";
  save_checkpoint(p, m, spec);
  const Checkpoint ck = load_checkpoint(p);
  CHECK(ck.model == m);
  CHECK(ck.spec.omega_sq == spec.omega_sq);
  CHECK(ck.spec.lambda == spec.lambda);
  CHECK(ck.spec.n == spec.n);
  CHECK(ck.spec.s == spec.s);
  CHECK(ck.spec.half_width == spec.half_width);
  CHECK(ck.spec.e_init == spec.e_init);
  CHECK(ck.spec.a == spec.a);

  // Saving the loaded model reproduces the file byte for byte.
  save_checkpoint(dir.path / "b.bin", ck.model, ck.spec);
  CHECK(slurp(p) == slurp(dir.path / "b.bin"));
}

TEST_CASE("checkpoint load errors are distinct") {
  TempDir dir;
  const fs::path good = dir.path / "good.bin";
  save_checkpoint(good, init_model(ModelShape{{1, 4}, {1, 4}}, 1), sample_spec());
  const std::string bytes = slurp(good);

  SUBCASE("missing file") { CHECK(load_error(dir.path / "none.bin") == CheckpointError::Kind::Io); }
  SUBCASE("bad magic") {
    std::string b = bytes;
    b[0] = 'X';
    spit(dir.path / "m.bin", b);
    CHECK(load_error(dir.path / "m.bin") == CheckpointError::Kind::Format);
  }
  SUBCASE("version mismatch") {
    std::string b = bytes;
    b[8] = static_cast<char>(kCheckpointVersion + 1);
    spit(dir.path / "v.bin", b);
    CHECK(load_error(dir.path / "v.bin") == CheckpointError::Kind::Version);
  }
  SUBCASE("truncated") {
    spit(dir.path / "t.bin", bytes.substr(0, bytes.size() - 5));
    CHECK(load_error(dir.path / "t.bin") == CheckpointError::Kind::Truncated);
    spit(dir.path / "t2.bin", bytes.substr(0, 20));
    CHECK(load_error(dir.path / "t2.bin") == CheckpointError::Kind::Truncated);
  }
  SUBCASE("shape mismatch") {
    // psi_net dims start right after the 52-byte header and metadata block:
    // u32 count, then u32 dims; make the output width 3.
    std::string b = bytes;
    const std::size_t dims_at = 8 + 4 + 5 * 8 + 2 * 4 + 4;
    const std::size_t last_dim = dims_at + 2 * 4;
    std::uint32_t three = 3;
    std::memcpy(b.data() + last_dim, &three, 4);
    spit(dir.path / "s.bin", b);
    const auto kind = load_error(dir.path / "s.bin");
    CHECK((kind == CheckpointError::Kind::Shape || kind == CheckpointError::Kind::Truncated));
  }
  SUBCASE("trailing bytes") {
    spit(dir.path / "x.bin", bytes + "junk");
    CHECK(load_error(dir.path / "x.bin") == CheckpointError::Kind::Format);
  }
}

TEST_CASE("checkpoint path convention") {
  CHECK(checkpoint_path("run", 0, 0.64) == fs::path("run") / "ckpt_n0_lambda0.64.bin");
  CHECK(checkpoint_path("run", 5, 10.24) == fs::path("run") / "ckpt_n5_lambda10.24.bin");
  CHECK(checkpoint_path("run", 1, 0.0) == fs::path("run") / "ckpt_n1_lambda0.bin");
}

TEST_CASE("a checkpoint at one coupling seeds a run at the next") {
  TempDir dir;
  const ModelShape shape{{2, 8}, {1, 4}};
  const ModelPair m = init_model(shape, 5);
  ProblemSpec spec;
  spec.lambda = 0.64;
  spec.half_width = 3.5;
  const fs::path p = checkpoint_path(dir.path, 0, 0.64);
  save_checkpoint(p, m, spec);

  TrainConfig cfg;
  cfg.shape = shape;
  cfg.max_epochs = 1;
  cfg.batch_size = 16;
  cfg.transfer_from = p;
  cfg.scenario = Scenario::Transfer;
  ProblemSpec next = spec;
  next.lambda = 1.28;
  const TrainResult r = train_state(next, cfg, StateArchive{});
  REQUIRE(r.trace.rows.size() == 1);
  CHECK(r.trace.rows[0].energy == predict_energy(m));
}

TEST_CASE("one optimizer step from a reloaded model equals one from memory") {
  TempDir dir;
  const ModelShape shape{{2, 8}, {1, 4}};
  const ModelPair m = init_model(shape, 12);
  ProblemSpec spec;
  save_checkpoint(dir.path / "c.bin", m, spec);
  const Checkpoint ck = load_checkpoint(dir.path / "c.bin");

  TrainConfig cfg;
  cfg.shape = shape;
  cfg.max_epochs = 1;
  cfg.batch_size = 32;
  cfg.total_loss_threshold = 1e-30;
  cfg.eq_loss_threshold = 1e-30;
  const TrainResult a = train_state(spec, cfg, StateArchive{}, m);
  const TrainResult b = train_state(spec, cfg, StateArchive{}, ck.model);
  CHECK(a.model == b.model);
}
