#include "acqsim/config.hpp"

#include <fstream>
#include <random>

#include "acqsim/errors.hpp"
#include "acqsim/units.hpp"

namespace acqsim::config {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ConfigError("config field '" + path + "': " + why);
}

const json& require(const json& node, const std::string& key, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
  auto it = node.find(key);
  if (it == node.end()) fail(path + "." + key, "missing");
  return *it;
}

double require_number(const json& node, const std::string& key, const std::string& path) {
  const json& v = require(node, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double optional_number(const json& node, const std::string& key, double fallback,
                       const std::string& path) {
  if (!node.is_object() || !node.contains(key)) return fallback;
  if (!node[key].is_number()) fail(path + "." + key, "expected a number");
  return node[key].get<double>();
}

int optional_int(const json& node, const std::string& key, int fallback, const std::string& path) {
  if (!node.is_object() || !node.contains(key)) return fallback;
  if (!node[key].is_number_integer()) fail(path + "." + key, "expected an integer");
  return node[key].get<int>();
}

std::vector<double> require_number_list(const json& node, const std::string& key,
                                        const std::string& path) {
  const json& v = require(node, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(path + "." + key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path.string() + ": " + e.what());
  }
  // accept a manifest transparently: re-run from its embedded config echo
  if (root.is_object() && root.contains("config") && root.contains("subcommand")) {
    root = root["config"];
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  const int version = optional_int(root, "schema_version", schema_version, "");
  if (version != schema_version)
    throw ConfigError("unsupported schema_version " + std::to_string(version));
  return root;
}

SystemSpec parse_system(const json& root) {
  const json& sys = require(root, "system", "");
  SystemSpec spec;
  for (double f : require_number_list(sys, "qubit_detunings_hz", "system"))
    spec.qubit_detunings.push_back(angular_from_hz(f));
  spec.cavity_detuning = angular_from_hz(require_number(sys, "cavity_detuning_hz", "system"));
  spec.coupling_g = angular_from_hz(require_number(sys, "coupling_g_hz", "system"));
  spec.cavity_decay = angular_from_hz(optional_number(sys, "cavity_decay_hz", 0.0, "system"));
  const int n = spec.qubit_count();
  if (sys.contains("qubit_decay_hz")) {
    for (double f : require_number_list(sys, "qubit_decay_hz", "system"))
      spec.qubit_decay.push_back(angular_from_hz(f));
  } else {
    spec.qubit_decay.assign(n, 0.0);
  }
  if (sys.contains("qubit_dephasing_hz")) {
    for (double f : require_number_list(sys, "qubit_dephasing_hz", "system"))
      spec.qubit_dephasing.push_back(angular_from_hz(f));
  } else {
    spec.qubit_dephasing.assign(n, 0.0);
  }
  spec.fock_truncation = optional_int(sys, "fock_truncation", 3, "system");
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
  return spec;
}

DriveParams parse_drive(const json& root, int qubit_count) {
  const json& dr = require(root, "drive", "");
  DriveParams drive;
  drive.frequency = angular_from_hz(optional_number(dr, "frequency_hz", 0.0, "drive"));
  const bool has_abs = dr.contains("amplitudes_hz");
  const bool has_ratio = dr.contains("amplitude_ratios");
  if (has_abs && has_ratio)
    fail("drive", "give either amplitudes_hz or amplitude_ratios, not both");
  if (has_abs) {
    for (double f : require_number_list(dr, "amplitudes_hz", "drive"))
      drive.amplitudes.push_back(angular_from_hz(f));
  } else if (has_ratio) {
    for (double r : require_number_list(dr, "amplitude_ratios", "drive"))
      drive.amplitudes.push_back(r * drive.frequency);
  } else {
    drive.amplitudes.assign(qubit_count, 0.0);
  }
  if (dr.contains("phases_rad")) {
    drive.phases = require_number_list(dr, "phases_rad", "drive");
  } else {
    drive.phases.assign(qubit_count, 0.0);
  }
  try {
    drive.validate(qubit_count);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("drive: ") + e.what());
  }
  return drive;
}

std::set<int> parse_excited(const json& root, int qubit_count) {
  std::set<int> out;
  if (!root.contains("initial")) return out;
  const json& init = root["initial"];
  if (!init.contains("excited_qubits")) return out;
  const json& arr = init["excited_qubits"];
  if (!arr.is_array()) fail("initial.excited_qubits", "expected an array of 1-based indices");
  for (const auto& e : arr) {
    if (!e.is_number_integer()) fail("initial.excited_qubits", "expected integer indices");
    const int q = e.get<int>();
    if (q < 1 || q > qubit_count)
      fail("initial.excited_qubits", "index " + std::to_string(q) + " out of range 1.." +
                                         std::to_string(qubit_count));
    out.insert(q - 1);
  }
  return out;
}

RunSettings parse_run(const json& root) {
  RunSettings rs;
  const json run = root.contains("run") ? root["run"] : json::object();
  rs.t_end = seconds_from_ns(optional_number(run, "t_end_ns", 20.0, "run"));
  rs.sample_count = optional_int(run, "sample_count", 400, "run");
  rs.tol.rel = optional_number(run, "rel_tol", 1e-8, "run");
  rs.tol.abs = optional_number(run, "abs_tol", 1e-10, "run");
  if (run.contains("method")) {
    const std::string m = run["method"].get<std::string>();
    if (m == "adaptive")
      rs.method = IntegrationMethod::adaptive_rk45;
    else if (m == "rk4")
      rs.method = IntegrationMethod::fixed_rk4;
    else
      fail("run.method", "expected 'adaptive' or 'rk4'");
  }
  if (run.contains("model")) rs.model = model_from_string(run["model"].get<std::string>());
  return rs;
}

SweepModel model_from_string(const std::string& name) {
  if (name == "full") return SweepModel::full;
  if (name == "effective") return SweepModel::effective_timedep;
  if (name == "secular") return SweepModel::effective_secular;
  throw ConfigError("model must be one of full|effective|secular, got '" + name + "'");
}

SweepConfig parse_sweep(const json& root) {
  SweepConfig cfg;
  cfg.system = parse_system(root);
  const int n = cfg.system.qubit_count();

  const json& dr = require(root, "drive", "");
  cfg.amplitude_ratios = require_number_list(dr, "amplitude_ratios", "drive");
  if (dr.contains("phases_rad"))
    cfg.phases = require_number_list(dr, "phases_rad", "drive");
  else
    cfg.phases.assign(n, 0.0);

  const json& sw = require(root, "sweep", "");
  cfg.m_min = angular_from_hz(require_number(sw, "frequency_min_hz", "sweep"));
  cfg.m_max = angular_from_hz(require_number(sw, "frequency_max_hz", "sweep"));
  cfg.m_steps = optional_int(sw, "steps", 141, "sweep");

  const RunSettings rs = parse_run(root);
  cfg.t_end = rs.t_end;
  cfg.sample_count = rs.sample_count;
  cfg.tol = rs.tol;
  cfg.model = rs.model;
  cfg.excited_qubits = parse_excited(root, n);
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }
  return cfg;
}

SpectrumSettings parse_spectrum(const json& root) {
  const json& sp = require(root, "spectrum", "");
  SpectrumSettings s;
  s.drive_frequency = angular_from_hz(require_number(sp, "frequency_hz", "spectrum"));
  if (sp.contains("amplitude_hz")) {
    s.amplitude = angular_from_hz(require_number(sp, "amplitude_hz", "spectrum"));
  } else if (sp.contains("amplitude_ratio")) {
    s.amplitude = require_number(sp, "amplitude_ratio", "spectrum") * s.drive_frequency;
  } else {
    fail("spectrum", "need amplitude_hz or amplitude_ratio");
  }
  s.n_max = optional_int(sp, "n_max", 0, "spectrum");
  s.linewidth = angular_from_hz(optional_number(sp, "linewidth_hz", 0.0, "spectrum"));
  return s;
}

DriveDesignSettings parse_drive_design(const json& root) {
  const json& dd = require(root, "drive_design", "");
  DriveDesignSettings s;
  const bool cyc = dd.contains("deformation_potential_hz_per_strain");
  const bool ang = dd.contains("deformation_potential_rad_s_per_strain");
  if (cyc == ang)
    fail("drive_design",
         "give exactly one of deformation_potential_hz_per_strain or "
         "deformation_potential_rad_s_per_strain");
  const double dp = cyc ? require_number(dd, "deformation_potential_hz_per_strain", "drive_design")
                        : require_number(dd, "deformation_potential_rad_s_per_strain", "drive_design");
  const double cs = require_number(dd, "sound_speed_m_s", "drive_design");
  try {
    s.material =
        MaterialParams::make(dp, cyc ? RateConvention::cyclic : RateConvention::angular, cs);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("drive_design: ") + e.what());
  }
  s.drive_frequency = angular_from_hz(require_number(dd, "frequency_hz", "drive_design"));
  s.target_ratio = require_number(dd, "target_ratio", "drive_design");
  return s;
}

EffectiveSettings parse_effective(const json& root, int qubit_count) {
  EffectiveSettings s;
  if (root.contains("effective")) {
    const json& eff = root["effective"];
    if (eff.contains("pairs")) {
      for (const auto& p : eff["pairs"]) {
        if (!p.is_array() || p.size() != 2) fail("effective.pairs", "expected pairs like [1,2]");
        const int a = p[0].get<int>(), b = p[1].get<int>();
        if (a < 1 || b < 1 || a > qubit_count || b > qubit_count || a == b)
          fail("effective.pairs", "bad 1-based qubit pair");
        s.pairs.emplace_back(a - 1, b - 1);
      }
    }
    if (eff.contains("orders")) {
      for (const auto& o : eff["orders"]) s.orders.push_back(o.get<int>());
    }
  }
  if (s.pairs.empty()) {
    for (int i = 0; i < qubit_count; ++i)
      for (int j = i + 1; j < qubit_count; ++j) s.pairs.emplace_back(i, j);
  }
  if (s.orders.empty()) s.orders = {1, 2, 3};
  return s;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::random_device rd;
  const fs::path tmp =
      path.parent_path() / (".tmp-" + std::to_string(rd()) + "-" + path.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json make_manifest(const std::string& subcommand, const json& config_echo,
                   const std::vector<std::string>& outputs, double wall_clock_s,
                   const IntegratorStats& stats) {
  json m;
  m["schema_version"] = schema_version;
  m["tool"] = "acqsim";
  m["version"] = tool_version;
  m["subcommand"] = subcommand;
  m["config"] = config_echo;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a_hash(config_echo.dump())));
  m["config_hash"] = std::string(buf);
  m["outputs"] = outputs;
  m["wall_clock_s"] = wall_clock_s;
  m["integrator"] = {{"steps_accepted", stats.steps_accepted},
                     {"steps_rejected", stats.steps_rejected},
                     {"rhs_evaluations", stats.rhs_evaluations}};
  return m;
}

}  // namespace acqsim::config
