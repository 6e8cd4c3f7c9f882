#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "acqsim/drive_design.hpp"
#include "acqsim/effective.hpp"
#include "acqsim/lindblad.hpp"
#include "acqsim/sweep.hpp"
#include "acqsim/system.hpp"

namespace acqsim::config {

inline constexpr int schema_version = 1;
inline constexpr const char* tool_version = "0.1.0";

using json = nlohmann::json;

// Parses a run-configuration file. All frequencies in the file are cyclic Hz
// (converted to rad/s internally), times are ns, qubit indices 1-based.
// Throws ConfigError with a field-path diagnostic on any problem. A manifest
// produced by a previous run is accepted transparently: its embedded config
// echo is extracted, so re-running from a manifest reproduces the outputs.
json load_config_file(const std::filesystem::path& path);

SystemSpec parse_system(const json& root);

// Drive for a single simulation: "frequency_hz" plus either "amplitudes_hz"
// or "amplitude_ratios" (exactly one), optional "phases_rad".
DriveParams parse_drive(const json& root, int qubit_count);

// 0-based excited-qubit set from initial.excited_qubits (1-based in file).
std::set<int> parse_excited(const json& root, int qubit_count);

struct RunSettings {
  double t_end = 0.0;  // s
  int sample_count = 400;
  Tolerances tol{1e-8, 1e-10};
  IntegrationMethod method = IntegrationMethod::adaptive_rk45;
  SweepModel model = SweepModel::full;
};
RunSettings parse_run(const json& root);

SweepConfig parse_sweep(const json& root);

struct SpectrumSettings {
  double amplitude = 0.0;        // rad/s
  double drive_frequency = 0.0;  // rad/s
  int n_max = 0;                 // 0 = ceil(D/M) + 20
  double linewidth = 0.0;        // rad/s
};
SpectrumSettings parse_spectrum(const json& root);

struct DriveDesignSettings {
  MaterialParams material;
  double drive_frequency = 0.0;  // rad/s
  double target_ratio = 0.0;
};
DriveDesignSettings parse_drive_design(const json& root);

struct EffectiveSettings {
  std::vector<std::pair<int, int>> pairs;  // 0-based
  std::vector<int> orders;                 // harmonic orders
};
EffectiveSettings parse_effective(const json& root, int qubit_count);

// Model selector override from --model full|effective|secular.
SweepModel model_from_string(const std::string& name);

// Write-to-temp + atomic rename; no partial files on failure.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

json make_manifest(const std::string& subcommand, const json& config_echo,
                   const std::vector<std::string>& outputs, double wall_clock_s,
                   const IntegratorStats& stats);

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace acqsim::config
