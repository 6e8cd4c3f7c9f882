// acqsim: simulator and analytics CLI for acoustically driven, cavity-mediated
// qubit-qubit interactions.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acqsim/config.hpp"
#include "acqsim/drive_design.hpp"
#include "acqsim/effective.hpp"
#include "acqsim/errors.hpp"
#include "acqsim/lindblad.hpp"
#include "acqsim/spectrum.hpp"
#include "acqsim/sweep.hpp"
#include "acqsim/units.hpp"

namespace fs = std::filesystem;
using namespace acqsim;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::string model;
  int workers = 0;
  long seed = 0;  // reserved; no stochastic paths yet
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config) {
  auto* opt = cmd->add_option("--config", args.config_path, "run-configuration JSON file");
  if (needs_config) opt->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--workers", args.workers, "sweep worker count (0 = hardware)");
  cmd->add_option("--model", args.model, "model override: full|effective|secular");
  cmd->add_option("--seed", args.seed, "reserved (no stochastic paths)");
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// advisory only: the full model integrates fine outside the dispersive
// regime, but the effective analytics lose their footing there
void warn_if_not_dispersive(const SystemSpec& spec) {
  if (!spec.in_dispersive_regime()) {
    std::cerr << "note: g/|Delta + delta_i| >= 0.1 for at least one qubit; outside the "
                 "dispersive regime the effective couplings are unreliable\n";
  }
}

std::string trajectory_csv(const Trajectory& traj, int qubit_count, bool has_cavity) {
  std::ostringstream out;
  out.precision(12);
  out << "t_ns";
  for (int q = 1; q <= qubit_count; ++q) out << ",qubit" << q << "_population";
  if (has_cavity) out << ",cavity_population";
  out << ",trace,purity\n";
  for (int k = 0; k < traj.sample_count(); ++k) {
    out << ns_from_seconds(traj.times[k]);
    for (int q = 0; q < qubit_count; ++q) out << "," << traj.qubit_population[q][k];
    if (has_cavity) out << "," << traj.cavity_population[k];
    out << "," << traj.trace_real[k] << "," << traj.purity[k] << "\n";
  }
  return out.str();
}

void write_outputs_and_manifest(const std::string& subcommand, const CommonArgs& args,
                                const config::json& echo,
                                const std::vector<std::pair<std::string, std::string>>& files,
                                double wall, const IntegratorStats& stats) {
  std::vector<std::string> names;
  for (const auto& [name, content] : files) {
    config::atomic_write_file(fs::path(args.out_dir) / name, content);
    names.push_back(name);
  }
  const config::json manifest = config::make_manifest(subcommand, echo, names, wall, stats);
  config::atomic_write_file(fs::path(args.out_dir) / "manifest.json", manifest.dump(2) + "\n");
}

int run_simulate(const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const config::json cfg = config::load_config_file(args.config_path);
  const SystemSpec spec = config::parse_system(cfg);
  warn_if_not_dispersive(spec);
  const DriveParams drive = config::parse_drive(cfg, spec.qubit_count());
  const std::set<int> excited = config::parse_excited(cfg, spec.qubit_count());
  config::RunSettings run = config::parse_run(cfg);
  if (!args.model.empty()) run.model = config::model_from_string(args.model);

  Trajectory traj;
  bool has_cavity = false;
  if (run.model == SweepModel::full) {
    const SpaceLayout layout = build_space(spec);
    EvolveOptions opts;
    opts.tol = run.tol;
    opts.method = run.method;
    traj = evolve(spec, drive, initial_state(layout, excited), run.t_end, run.sample_count, opts);
    has_cavity = true;
  } else {
    warn_if_not_dispersive(spec);
  const DispersiveCouplings c = dispersive_couplings(spec);
    EffectiveEvolveOptions opts;
    opts.model = run.model == SweepModel::effective_secular ? EffectiveModel::secular
                                                            : EffectiveModel::time_dependent;
    opts.tol = run.tol;
    traj = evolve_effective(c, spec, drive, initial_state_qubits(spec.qubit_count(), excited),
                            run.t_end, run.sample_count, opts);
  }

  write_outputs_and_manifest(
      "simulate", args, cfg,
      {{"trajectory.csv", trajectory_csv(traj, spec.qubit_count(), has_cavity)}}, wall_since(t0),
      traj.stats);
  std::cout << "simulate: " << traj.sample_count() << " samples, " << traj.stats.steps_accepted
            << " steps -> " << (fs::path(args.out_dir) / "trajectory.csv").string() << "\n";
  return 0;
}

int run_sweep_cmd(const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const config::json cfg = config::load_config_file(args.config_path);
  SweepConfig sweep_cfg = config::parse_sweep(cfg);
  warn_if_not_dispersive(sweep_cfg.system);
  if (!args.model.empty()) sweep_cfg.model = config::model_from_string(args.model);
  if (args.workers > 0) sweep_cfg.workers = args.workers;

  const PopulationMap map = run_sweep(sweep_cfg);

  std::vector<std::pair<std::string, std::string>> files;
  for (int q = 0; q < map.qubit_count(); ++q) {
    files.emplace_back("qubit" + std::to_string(q + 1) + "_population.csv",
                       population_csv(map, q));
  }
  write_outputs_and_manifest("sweep", args, cfg, files, wall_since(t0), map.stats);
  std::cout << "sweep: " << map.m_values.size() << " M points x " << map.times.size()
            << " samples -> " << args.out_dir << "\n";
  return 0;
}

int run_effective(const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const config::json cfg = config::load_config_file(args.config_path);
  const SystemSpec spec = config::parse_system(cfg);
  const int n = spec.qubit_count();
  const DispersiveCouplings c = dispersive_couplings(spec);

  std::printf("dispersive couplings J (MHz)\n      ");
  for (int j = 0; j < n; ++j) std::printf("      q%d", j + 1);
  std::printf("\n");
  for (int i = 0; i < n; ++i) {
    std::printf("  q%d", i + 1);
    for (int j = 0; j < n; ++j) std::printf("  %8.3f", mhz_from_angular(c.j[i][j]));
    std::printf("\n");
  }

  config::json record;
  record["j_matrix_mhz"] = config::json::array();
  for (int i = 0; i < n; ++i) {
    std::vector<double> row;
    for (int j = 0; j < n; ++j) row.push_back(mhz_from_angular(c.j[i][j]));
    record["j_matrix_mhz"].push_back(row);
  }

  if (cfg.contains("drive")) {
    const DriveParams drive = config::parse_drive(cfg, n);
    const config::EffectiveSettings eff = config::parse_effective(cfg, n);
    std::printf("\nsecular couplings G^N (drive M = %.4f GHz)\n",
                ghz_from_angular(drive.frequency));
    std::printf("  pair   N        z     psi/pi    |G| MHz\n");
    record["secular"] = config::json::array();
    for (const auto& [i, j] : eff.pairs) {
      for (int order : eff.orders) {
        const SecularCoupling sc =
            secular_coupling(c.j[i][j], drive, {i, j}, order, SecularMode::closed_form);
        std::printf("  %d-%d   %2d  %8.4f  %8.4f  %9.4f\n", i + 1, j + 1, order, sc.z,
                    sc.psi / std::numbers::pi, mhz_from_angular(sc.magnitude()));
        record["secular"].push_back({{"pair", {i + 1, j + 1}},
                                     {"order", order},
                                     {"z", sc.z},
                                     {"psi_rad", sc.psi},
                                     {"magnitude_mhz", mhz_from_angular(sc.magnitude())},
                                     {"phase_rad", std::arg(sc.g)}});
      }
    }
  }

  if (!args.out_dir.empty() && args.out_dir != ".") {
    IntegratorStats stats;
    write_outputs_and_manifest("effective", args, cfg, {{"effective.json", record.dump(2) + "\n"}},
                               wall_since(t0), stats);
  }
  return 0;
}

int run_spectrum(const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const config::json cfg = config::load_config_file(args.config_path);
  const config::SpectrumSettings s = config::parse_spectrum(cfg);
  const int n_max =
      s.n_max > 0 ? s.n_max
                  : static_cast<int>(std::ceil(s.amplitude / s.drive_frequency)) + 20;
  const SidebandComb comb = sideband_comb(s.amplitude, s.drive_frequency, n_max);
  IntegratorStats stats;
  write_outputs_and_manifest("spectrum", args, cfg, {{"spectrum.csv", comb_to_csv(comb)}},
                             wall_since(t0), stats);
  std::cout << "spectrum: " << comb.lines.size() << " lines, total weight "
            << comb.total_weight() << " -> "
            << (fs::path(args.out_dir) / "spectrum.csv").string() << "\n";
  return 0;
}

int run_drive_design(const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const config::json cfg = config::load_config_file(args.config_path);
  const config::DriveDesignSettings s = config::parse_drive_design(cfg);
  const AcousticRequirement req =
      acoustic_wave_requirements(s.material, s.drive_frequency, s.target_ratio);
  std::cout << drive_design_report(s.material, s.drive_frequency, s.target_ratio, req);

  config::json record;
  record["wavenumber_rad_per_m"] = req.wavenumber;
  record["wavenumber_cycles_per_m"] = req.wavenumber / two_pi;
  record["wavelength_m"] = req.wavelength;
  record["displacement_amplitude_m"] = req.displacement_amplitude;
  record["strain_amplitude"] = req.strain_amplitude;
  record["modulation_amplitude_hz"] = hz_from_angular(req.modulation_amplitude);
  if (!args.out_dir.empty() && args.out_dir != ".") {
    IntegratorStats stats;
    write_outputs_and_manifest("drive-design", args, cfg,
                               {{"drive_design.json", record.dump(2) + "\n"}}, wall_since(t0),
                               stats);
  }
  return 0;
}

int run_optimize(const CommonArgs& args) {
  std::printf("optimal drive ratio D/M maximizing |J_N(2D/M)|\n");
  std::printf("   N      D/M    |J_N| at optimum\n");
  config::json record = config::json::array();
  for (int order = 1; order <= 3; ++order) {
    const double ratio = optimal_drive_amplitude(order);
    const double peak = std::abs(bessel_j(order, 2.0 * ratio));
    std::printf("  %2d   %.4f   %.4f\n", order, ratio, peak);
    record.push_back({{"order", order}, {"ratio", ratio}, {"bessel_peak", peak}});
  }
  if (!args.out_dir.empty() && args.out_dir != ".") {
    config::atomic_write_file(fs::path(args.out_dir) / "optimize.json", record.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator for acoustically controlled photon-mediated qubit interactions"};
  app.require_subcommand(1);

  CommonArgs args;
  args.out_dir = ".";
  auto* cmd_simulate = app.add_subcommand("simulate", "integrate one trajectory, write CSV");
  add_common(cmd_simulate, args, true);
  auto* cmd_sweep = app.add_subcommand("sweep", "population map over a drive-frequency grid");
  add_common(cmd_sweep, args, true);
  auto* cmd_effective = app.add_subcommand("effective", "J matrix and secular couplings");
  add_common(cmd_effective, args, true);
  auto* cmd_spectrum = app.add_subcommand("spectrum", "sideband comb CSV");
  add_common(cmd_spectrum, args, true);
  auto* cmd_drive = app.add_subcommand("drive-design", "acoustic parameters for a target D/M");
  add_common(cmd_drive, args, true);
  auto* cmd_optimize = app.add_subcommand("optimize", "optimal D/M ratios for N = 1..3");
  add_common(cmd_optimize, args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (cmd_simulate->parsed()) return run_simulate(args);
    if (cmd_sweep->parsed()) return run_sweep_cmd(args);
    if (cmd_effective->parsed()) return run_effective(args);
    if (cmd_spectrum->parsed()) return run_spectrum(args);
    if (cmd_drive->parsed()) return run_drive_design(args);
    if (cmd_optimize->parsed()) return run_optimize(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IntegrationError& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
