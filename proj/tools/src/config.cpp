#include "config.hpp"

#include <schrospec/errors.hpp>

#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace schrospec::cli {

using nlohmann::json;

namespace {

/// Binds one dotted config key to a RunConfig member.
struct Field {
  std::function<json(const RunConfig&)> get;
  std::function<void(RunConfig&, const json&)> set;
};

template <class T>
T as(const json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError("");
    } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("");
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "' has the wrong type (got " + v.dump() + ")");
  }
}

template <class T, class M>
Field scalar(std::string key, M member) {
  return {[member](const RunConfig& c) { return json(member(const_cast<RunConfig&>(c))); },
          [member, key](RunConfig& c, const json& v) { member(c) = as<T>(v, key); }};
}

template <class M>
Field optional_double(std::string key, M member) {
  return {[member](const RunConfig& c) {
            const auto& o = member(const_cast<RunConfig&>(c));
            return o ? json(*o) : json(nullptr);
          },
          [member, key](RunConfig& c, const json& v) {
            if (v.is_null()) {
              member(c).reset();
            } else {
              member(c) = as<double>(v, key);
            }
          }};
}

const std::map<std::string, Field>& registry() {
  static const std::map<std::string, Field> fields = [] {
    std::map<std::string, Field> f;
    const auto add = [&](const std::string& key, Field field) { f.emplace(key, std::move(field)); };
#define SCHROSPEC_FIELD(T, key, expr) add(key, scalar<T>(key, [](RunConfig& c) -> auto& { return expr; }))
    SCHROSPEC_FIELD(double, "problem.omega_sq", c.problem.omega_sq);
    SCHROSPEC_FIELD(double, "problem.lambda", c.problem.lambda);
    SCHROSPEC_FIELD(int, "problem.n_max", c.problem.n_max);
    SCHROSPEC_FIELD(double, "problem.e_init", c.problem.e_init);
    SCHROSPEC_FIELD(double, "problem.a", c.problem.a);
    add("problem.domain_override",
        optional_double("problem.domain_override", [](RunConfig& c) -> auto& { return c.problem.domain_override; }));
    add("problem.lambdas",
        {[](const RunConfig& c) { return json(c.problem.lambdas); },
         [](RunConfig& c, const json& v) {
           if (!v.is_array()) throw ConfigError("config field 'problem.lambdas' must be an array");
           c.problem.lambdas.clear();
           for (const auto& x : v) c.problem.lambdas.push_back(as<double>(x, "problem.lambdas"));
         }});

    SCHROSPEC_FIELD(double, "training.learning_rate", c.training.learning_rate);
    SCHROSPEC_FIELD(int, "training.lr_decay_every", c.training.lr_decay_every);
    SCHROSPEC_FIELD(double, "training.lr_decay_factor", c.training.lr_decay_factor);
    SCHROSPEC_FIELD(double, "training.adam_beta1", c.training.adam_beta1);
    SCHROSPEC_FIELD(double, "training.adam_beta2", c.training.adam_beta2);
    SCHROSPEC_FIELD(double, "training.adam_eps", c.training.adam_eps);
    SCHROSPEC_FIELD(int, "training.max_epochs", c.training.max_epochs);
    SCHROSPEC_FIELD(double, "training.total_loss_threshold", c.training.total_loss_threshold);
    SCHROSPEC_FIELD(double, "training.eq_loss_threshold", c.training.eq_loss_threshold);
    SCHROSPEC_FIELD(double, "training.transfer_eq_loss_threshold", c.transfer_eq_loss_threshold);
    SCHROSPEC_FIELD(std::size_t, "training.batch_size", c.training.batch_size);
    SCHROSPEC_FIELD(double, "training.jitter_fraction", c.training.jitter_fraction);
    SCHROSPEC_FIELD(std::size_t, "training.snapshot_points", c.training.snapshot_points);
    SCHROSPEC_FIELD(int, "training.log_every", c.training.log_every);
    SCHROSPEC_FIELD(int, "training.validate_every", c.training.validate_every);
    SCHROSPEC_FIELD(int, "training.psi_hidden_layers", c.training.shape.psi.hidden_layers);
    SCHROSPEC_FIELD(int, "training.psi_width", c.training.shape.psi.width);
    SCHROSPEC_FIELD(int, "training.energy_hidden_layers", c.training.shape.energy.hidden_layers);
    SCHROSPEC_FIELD(int, "training.energy_width", c.training.shape.energy.width);

    SCHROSPEC_FIELD(double, "training.weights.normalization", c.training.schedule.base.normalization);
    SCHROSPEC_FIELD(double, "training.weights.integral", c.training.schedule.base.integral);
    SCHROSPEC_FIELD(double, "training.weights.boundary", c.training.schedule.base.boundary);
    SCHROSPEC_FIELD(double, "training.weights.symmetry", c.training.schedule.base.symmetry);
    SCHROSPEC_FIELD(double, "training.weights.orthogonality_per_n", c.training.schedule.base.orthogonality_per_n);
    SCHROSPEC_FIELD(double, "training.weights.equation_start", c.training.schedule.base.equation_start);
    SCHROSPEC_FIELD(double, "training.weights.energy_start", c.training.schedule.base.energy_start);

    SCHROSPEC_FIELD(double, "training.schedule.equation_end", c.training.schedule.equation_end);
    SCHROSPEC_FIELD(int, "training.schedule.equation_ramp_epochs", c.training.schedule.equation_ramp_epochs);
    SCHROSPEC_FIELD(int, "training.schedule.energy_decay_epochs", c.training.schedule.energy_decay_epochs);
    SCHROSPEC_FIELD(double, "training.schedule.transfer_orthogonality_per_n",
                    c.training.schedule.transfer_orthogonality_per_n);
    SCHROSPEC_FIELD(double, "training.schedule.transfer_energy_start", c.training.schedule.transfer_energy_start);

    SCHROSPEC_FIELD(int, "oracle.grid_points", c.oracle.grid_points);
    add("oracle.half_width",
        optional_double("oracle.half_width", [](RunConfig& c) -> auto& { return c.oracle.half_width; }));

    SCHROSPEC_FIELD(int, "fidelity.resamples", c.fidelity.resamples);
    SCHROSPEC_FIELD(std::size_t, "fidelity.points", c.fidelity.points);
    SCHROSPEC_FIELD(double, "fidelity.jitter_fraction", c.fidelity.jitter_fraction);
    SCHROSPEC_FIELD(std::uint64_t, "fidelity.seed", c.fidelity.seed);

    SCHROSPEC_FIELD(double, "analysis.low_below", c.cutoffs.low_below);
    SCHROSPEC_FIELD(double, "analysis.high_above", c.cutoffs.high_above);
#undef SCHROSPEC_FIELD

    add("output.run_dir", {[](const RunConfig& c) { return c.run_dir ? json(c.run_dir->string()) : json(nullptr); },
                           [](RunConfig& c, const json& v) {
                             if (v.is_null()) {
                               c.run_dir.reset();
                             } else if (v.is_string()) {
                               c.run_dir = v.get<std::string>();
                             } else {
                               throw ConfigError("config field 'output.run_dir' must be a string");
                             }
                           }});
    add("seed", {[](const RunConfig& c) { return json(c.seed); },
                 [](RunConfig& c, const json& v) {
                   c.seed = as<std::uint64_t>(v, "seed");
                   c.training.seed = c.seed;
                 }});
    add("deterministic", {[](const RunConfig& c) { return json(c.deterministic); },
                          [](RunConfig& c, const json& v) {
                            c.deterministic = as<bool>(v, "deterministic");
                            c.training.deterministic = c.deterministic;
                          }});
    return f;
  }();
  return fields;
}

void apply_object(RunConfig& cfg, const json& obj, const std::string& prefix, const std::string& origin) {
  for (const auto& [key, value] : obj.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (path == "schema_version") continue;
    const auto& reg = registry();
    if (const auto it = reg.find(path); it != reg.end()) {
      it->second.set(cfg, value);
    } else if (value.is_object()) {
      apply_object(cfg, value, path, origin);
    } else {
      throw ConfigError(origin + ": unknown config field '" + path + "'");
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  const auto require = [](bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError("config field '" + field + "' " + what);
  };
  require(problem.n_max >= 0, "problem.n_max", "must be >= 0");
  require(problem.lambda >= 0.0, "problem.lambda", "must be >= 0");
  require(!(problem.lambda == 0.0 && problem.omega_sq <= 0.0), "problem.lambda",
          "must be > 0 unless omega_sq > 0");
  require(problem.a > 0.0, "problem.a", "must be > 0");
  for (double l : problem.lambdas) require(l > 0.0, "problem.lambdas", "entries must be > 0");
  if (problem.domain_override) require(*problem.domain_override > 0.0, "problem.domain_override", "must be > 0");
  require(transfer_eq_loss_threshold > 0.0, "training.transfer_eq_loss_threshold", "must be > 0");
  require(oracle.grid_points >= 201, "oracle.grid_points", "must be >= 201");
  if (oracle.half_width) require(*oracle.half_width > 0.0, "oracle.half_width", "must be > 0");
  require(fidelity.resamples >= 1, "fidelity.resamples", "must be >= 1");
  require(fidelity.points >= 2, "fidelity.points", "must be >= 2");
  require(fidelity.jitter_fraction >= 0.0 && fidelity.jitter_fraction <= 0.5, "fidelity.jitter_fraction",
          "must lie in [0, 0.5]");
  require(cutoffs.low_below > 0.0 && cutoffs.high_above > 0.0, "analysis", "cutoffs must be > 0");
  try {
    training.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("training: ") + e.what());
  }
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"harmonic", "anharmonic", "double-well", "quartic"};
  return names;
}

RunConfig preset(std::string_view name) {
  RunConfig cfg;
  if (name == "harmonic") {
    return cfg;
  }
  if (name == "anharmonic") {
    cfg.problem.lambda = 0.005;
    cfg.problem.lambdas = default_lambda_grid();
    return cfg;
  }
  if (name == "double-well") {
    cfg.problem.omega_sq = -14.0;
    cfg.problem.lambda = 1.0;
    cfg.problem.n_max = 1;
    cfg.problem.e_init = -1.5 * 14.0 / 2.0;
    cfg.training.eq_loss_threshold = 2e-5;
    return cfg;
  }
  if (name == "quartic") {
    cfg.problem.omega_sq = 0.0;
    cfg.problem.lambda = 1.28;
    cfg.problem.lambdas = {1.28};
    return cfg;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected harmonic, anharmonic, double-well, quartic)");
}

void apply_config_text(RunConfig& cfg, std::string_view json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");
  if (!doc.contains("schema_version")) throw ConfigError(origin + ": missing 'schema_version'");
  if (doc["schema_version"] != kConfigSchemaVersion) {
    throw ConfigError(origin + ": unsupported schema_version " + doc["schema_version"].dump() + " (expected " +
                      std::to_string(kConfigSchemaVersion) + ")");
  }
  apply_object(cfg, doc, "", origin);
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path.string());
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' must look like section.key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  const auto& reg = registry();
  const auto it = reg.find(key);
  if (it == reg.end()) throw ConfigError("unknown config field '" + key + "'");
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;  // bare strings such as paths
  }
  it->second.set(cfg, value);
}

std::string to_json(const RunConfig& cfg) {
  json doc;
  doc["schema_version"] = kConfigSchemaVersion;
  for (const auto& [key, field] : registry()) {
    doc[json::json_pointer("/" + [&] {
      std::string p = key;
      for (char& ch : p) {
        if (ch == '.') ch = '/';
      }
      return p;
    }())] = field.get(cfg);
  }
  return doc.dump(2);
}

std::vector<double> sweep_lambdas(const RunConfig& cfg) {
  return cfg.problem.lambdas.empty() ? default_lambda_grid() : cfg.problem.lambdas;
}

}  // namespace schrospec::cli
