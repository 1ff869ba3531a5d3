#include "schrospec/checkpoint.hpp"

#include "schrospec/csv.hpp"
#include "schrospec/errors.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace schrospec {

namespace {

constexpr std::array<char, 8> kMagic{'S', 'C', 'H', 'R', 'S', 'P', 'C', 'K'};
constexpr std::uint32_t kMaxLayers = 1024;
constexpr std::uint32_t kMaxWidth = 1 << 20;

class Writer {
public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* p, std::size_t n) { bytes_.insert(bytes_.end(), p, p + n); }

  const std::vector<char>& bytes() const { return bytes_; }

private:
  std::vector<char> bytes_;
};

class Reader {
public:
  explicit Reader(std::vector<char> bytes) : bytes_(std::move(bytes)) {}

  std::uint64_t uint(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  double f64() { return std::bit_cast<double>(uint(8)); }
  bool read_magic() {
    need(kMagic.size());
    const bool ok = std::memcmp(bytes_.data() + pos_, kMagic.data(), kMagic.size()) == 0;
    pos_ += kMagic.size();
    return ok;
  }
  bool at_end() const { return pos_ == bytes_.size(); }

private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) {
      throw CheckpointError(CheckpointError::Kind::Truncated, "checkpoint is truncated");
    }
  }

  std::vector<char> bytes_;
  std::size_t pos_ = 0;
};

void write_network(Writer& w, const NetworkParams& p) {
  w.u32(static_cast<std::uint32_t>(p.layer_dims().size()));
  for (int d : p.layer_dims()) w.u32(static_cast<std::uint32_t>(d));
  for (Eigen::Index i = 0; i < p.values().size(); ++i) w.f64(p.values()[i]);
}

NetworkParams read_network(Reader& r) {
  const std::uint32_t count = r.u32();
  if (count < 2 || count > kMaxLayers) {
    throw CheckpointError(CheckpointError::Kind::Shape, "implausible layer count in checkpoint");
  }
  std::vector<int> dims(count);
  for (auto& d : dims) {
    const std::uint32_t v = r.u32();
    if (v == 0 || v > kMaxWidth) {
      throw CheckpointError(CheckpointError::Kind::Shape, "implausible layer width in checkpoint");
    }
    d = static_cast<int>(v);
  }
  Eigen::VectorXd values(static_cast<Eigen::Index>(NetworkParams::parameter_count(dims)));
  for (Eigen::Index i = 0; i < values.size(); ++i) values[i] = r.f64();
  return NetworkParams(std::move(dims), std::move(values));
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ModelPair& model,
                     const ProblemSpec& spec) {
  model.validate();
  Writer w;
  w.raw(kMagic.data(), kMagic.size());
  w.u32(kCheckpointVersion);
  w.f64(spec.omega_sq);
  w.f64(spec.lambda);
  w.i32(spec.n);
  w.i32(spec.s);
  w.f64(spec.half_width);
  w.f64(spec.e_init);
  w.f64(spec.a);
  write_network(w, model.psi_net);
  write_network(w, model.energy_net);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw CheckpointError(CheckpointError::Kind::Io, "cannot open " + path.string() + " for writing");
  }
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw CheckpointError(CheckpointError::Kind::Io, "failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(CheckpointError::Kind::Io, "cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Reader r(std::move(bytes));
  if (!r.read_magic()) {
    throw CheckpointError(CheckpointError::Kind::Format, path.string() + " is not a checkpoint");
  }
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    throw CheckpointError(CheckpointError::Kind::Version,
                          "unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ck;
  ck.spec.omega_sq = r.f64();
  ck.spec.lambda = r.f64();
  ck.spec.n = r.i32();
  ck.spec.s = r.i32();
  ck.spec.half_width = r.f64();
  ck.spec.e_init = r.f64();
  ck.spec.a = r.f64();
  ck.model.psi_net = read_network(r);
  ck.model.energy_net = read_network(r);
  if (!r.at_end()) {
    throw CheckpointError(CheckpointError::Kind::Format, "trailing bytes after checkpoint payload");
  }
  try {
    ck.model.validate();
  } catch (const ConfigError& e) {
    throw CheckpointError(CheckpointError::Kind::Shape, e.what());
  }
  return ck;
}

std::filesystem::path checkpoint_path(const std::filesystem::path& run_dir, int n, double lambda) {
  return run_dir / ("ckpt_n" + std::to_string(n) + "_lambda" + format_double(lambda) + ".bin");
}

}  // namespace schrospec
