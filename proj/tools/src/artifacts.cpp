#include "artifacts.hpp"

#include <schrospec/checkpoint.hpp>
#include <schrospec/csv.hpp>
#include <schrospec/errors.hpp>

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace schrospec::cli {

using nlohmann::json;

std::string state_stem(int n, std::optional<double> lambda) {
  std::string s = "n" + std::to_string(n);
  if (lambda) s += "_lambda" + format_double(*lambda);
  return s;
}

fs::path trace_path(const fs::path& dir, int n, std::optional<double> lambda) {
  return dir / ("trace_" + state_stem(n, lambda) + ".csv");
}

fs::path snapshot_path(const fs::path& dir, int n, std::optional<double> lambda) {
  return dir / ("state_" + state_stem(n, lambda) + ".csv");
}

void write_trace(const fs::path& path, const TrainTrace& trace) {
  bool with_fidelity = false;
  for (const auto& row : trace.rows) with_fidelity = with_fidelity || row.fidelity.has_value();

  CsvTable t;
  t.header.push_back("epoch");
  for (auto name : LossTerms::names) t.header.emplace_back(name);
  t.header.push_back("total");
  t.header.push_back("E");
  if (with_fidelity) t.header.push_back("fidelity");
  t.rows.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    std::vector<std::string> r;
    r.push_back(std::to_string(row.epoch));
    for (double v : row.losses.values.as_array()) r.push_back(format_double(v));
    r.push_back(format_double(row.losses.total));
    r.push_back(format_double(row.energy));
    if (with_fidelity) r.push_back(row.fidelity ? format_double(*row.fidelity) : "");
    t.rows.push_back(std::move(r));
  }
  write_csv(path, t);
}

void write_snapshot(const fs::path& path, const ArchivedState& state) {
  CsvTable t;
  t.header = {"x", "psi"};
  for (std::size_t i = 0; i < state.grid().size(); ++i) {
    t.rows.push_back({format_double(state.grid()[i]), format_double(state.psi()[i])});
  }
  write_csv(path, t);
}

ArchivedState read_snapshot(const fs::path& path, int n, double energy) {
  const CsvTable t = read_csv(path);
  const std::size_t cx = t.column("x"), cp = t.column("psi");
  std::vector<double> x, psi;
  for (const auto& row : t.rows) {
    x.push_back(parse_double(row[cx]));
    psi.push_back(parse_double(row[cp]));
  }
  return ArchivedState(n, energy, std::move(x), std::move(psi));
}

std::string status_name(TrainStatus status) {
  switch (status) {
    case TrainStatus::Converged: return "converged";
    case TrainStatus::NotConverged: return "not_converged";
    case TrainStatus::NumericFailure: return "numeric_failure";
  }
  return "unknown";
}

TrainStatus parse_status(const std::string& name) {
  if (name == "converged") return TrainStatus::Converged;
  if (name == "not_converged") return TrainStatus::NotConverged;
  if (name == "numeric_failure") return TrainStatus::NumericFailure;
  throw ConfigError("unknown training status '" + name + "'");
}

StateRecord make_record(const SolvedState& st, std::optional<double> lambda_suffix) {
  StateRecord r;
  r.n = st.spec.n;
  r.lambda = st.spec.lambda;
  r.omega_sq = st.spec.omega_sq;
  r.half_width = st.spec.half_width;
  r.energy = st.result.energy;
  r.status = st.result.status;
  r.epochs = static_cast<int>(st.result.trace.rows.size());
  r.converged_epoch = st.result.trace.converged_epoch;
  if (!st.result.trace.rows.empty()) {
    r.losses = st.result.trace.rows.back().losses.values;
    r.total = st.result.trace.rows.back().losses.total;
  }
  r.failure = st.result.failure;
  r.checkpoint = "ckpt_n" + std::to_string(r.n) + "_lambda" + format_double(r.lambda) + ".bin";
  r.trace = trace_path({}, r.n, lambda_suffix).string();
  r.snapshot = snapshot_path({}, r.n, lambda_suffix).string();
  return r;
}

void write_summary_csv(const fs::path& path, const std::vector<StateRecord>& records) {
  CsvTable t;
  t.header = {"n", "lambda", "omega_sq", "E", "status", "epochs"};
  for (auto name : LossTerms::names) t.header.emplace_back(name);
  t.header.push_back("total");
  for (const auto& r : records) {
    std::vector<std::string> row{std::to_string(r.n),  format_double(r.lambda), format_double(r.omega_sq),
                                 format_double(r.energy), status_name(r.status), std::to_string(r.epochs)};
    for (double v : r.losses.as_array()) row.push_back(format_double(v));
    row.push_back(format_double(r.total));
    t.rows.push_back(std::move(row));
  }
  write_csv(path, t);
}

namespace {

json record_json(const StateRecord& r) {
  json losses;
  const auto values = r.losses.as_array();
  for (std::size_t i = 0; i < values.size(); ++i) losses[std::string(LossTerms::names[i])] = values[i];
  json j{{"n", r.n},
         {"lambda", r.lambda},
         {"omega_sq", r.omega_sq},
         {"half_width", r.half_width},
         {"energy", r.energy},
         {"status", status_name(r.status)},
         {"epochs", r.epochs},
         {"converged_epoch", r.converged_epoch ? json(*r.converged_epoch) : json(nullptr)},
         {"losses", losses},
         {"total", r.total},
         {"checkpoint", r.checkpoint},
         {"trace", r.trace},
         {"snapshot", r.snapshot}};
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

StateRecord record_from_json(const json& j) {
  StateRecord r;
  r.n = j.at("n").get<int>();
  r.lambda = j.at("lambda").get<double>();
  r.omega_sq = j.at("omega_sq").get<double>();
  r.half_width = j.at("half_width").get<double>();
  r.energy = j.at("energy").get<double>();
  r.status = parse_status(j.at("status").get<std::string>());
  r.epochs = j.at("epochs").get<int>();
  if (!j.at("converged_epoch").is_null()) r.converged_epoch = j.at("converged_epoch").get<int>();
  const auto& l = j.at("losses");
  r.losses = {l.at("integral").get<double>(), l.at("normalization").get<double>(), l.at("boundary").get<double>(), l.at("orthogonality").get<double>(),
              l.at("equation").get<double>(), l.at("energy_min").get<double>(), l.at("symmetry").get<double>()};
  r.total = j.at("total").get<double>();
  r.failure = j.value("failure", "");
  r.checkpoint = j.at("checkpoint").get<std::string>();
  r.trace = j.at("trace").get<std::string>();
  r.snapshot = j.at("snapshot").get<std::string>();
  return r;
}

}  // namespace

void write_run_json(const fs::path& path, const RunSummary& summary) {
  json doc;
  doc["schema_version"] = 1;
  doc["command"] = summary.command;
  doc["config"] = json::parse(summary.config_json);
  doc["states"] = json::array();
  for (const auto& r : summary.states) doc["states"].push_back(record_json(r));
  doc["exit_code"] = summary.exit_code;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

RunSummary read_run_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read run summary " + path.string());
  try {
    const json doc = json::parse(in);
    RunSummary s;
    s.command = doc.at("command").get<std::string>();
    s.config_json = doc.at("config").dump();
    for (const auto& j : doc.at("states")) s.states.push_back(record_from_json(j));
    s.exit_code = doc.at("exit_code").get<int>();
    return s;
  } catch (const json::exception& e) {
    throw ConfigError("malformed run summary " + path.string() + ": " + e.what());
  }
}

void prepare_run_dir(const fs::path& dir, bool force, bool resume) {
  std::error_code ec;
  if (!fs::exists(dir)) {
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create run directory " + dir.string() + ": " + ec.message());
    return;
  }
  if (!fs::is_directory(dir)) throw ConfigError("run directory " + dir.string() + " is not a directory");
  if (fs::is_empty(dir) || resume) return;
  if (!force) {
    throw ConfigError("run directory " + dir.string() + " is not empty (use --force to overwrite or --resume)");
  }
  // Only our own artifacts are removed; anything else is left alone.
  static const std::regex ours(
      R"((trace|state)_n\d+(_lambda[^/]*)?\.csv|ckpt_n\d+_lambda[^/]*\.bin|summary\.csv|run\.json)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && std::regex_match(entry.path().filename().string(), ours)) {
      fs::remove(entry.path());
    }
  }
}

SolvedState load_solved_state(const fs::path& dir, const StateRecord& record) {
  const Checkpoint ck = load_checkpoint(dir / record.checkpoint);
  SolvedState st;
  st.spec = ck.spec;
  st.result.model = ck.model;
  st.result.status = record.status;
  st.result.energy = record.energy;
  st.result.trace.converged = record.status == TrainStatus::Converged;
  st.result.trace.converged_epoch = record.converged_epoch;
  st.snapshot = read_snapshot(dir / record.snapshot, record.n, record.energy);
  return st;
}

}  // namespace schrospec::cli
