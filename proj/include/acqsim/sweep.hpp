#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "acqsim/lindblad.hpp"
#include "acqsim/system.hpp"

namespace acqsim {

enum class SweepModel { full, effective_timedep, effective_secular };

struct SweepConfig {
  SystemSpec system;
  // Drive template: M swept over the grid; amplitudes follow as ratio_i * M.
  std::vector<double> amplitude_ratios;  // D_i/M, >= 0
  std::vector<double> phases;            // phi_i (rad)
  double m_min = 0.0;                    // rad/s
  double m_max = 0.0;                    // rad/s
  int m_steps = 0;                       // >= 1 grid points, inclusive ends
  double t_end = 0.0;                    // s
  int sample_count = 0;
  std::set<int> excited_qubits;          // 0-based
  SweepModel model = SweepModel::full;
  Tolerances tol{1e-8, 1e-10};
  int workers = 0;                       // 0 = hardware concurrency

  std::vector<double> m_grid() const;
  void validate() const;
};

struct PopulationMap {
  std::vector<double> m_values;                         // rad/s
  std::vector<double> times;                            // s
  // populations[qubit][m_index * times.size() + t_index]
  std::vector<std::vector<double>> populations;
  std::uint64_t config_hash = 0;
  IntegratorStats stats;  // aggregated over all grid points

  int qubit_count() const { return static_cast<int>(populations.size()); }
  double population(int qubit, int m_index, int t_index) const {
    return populations[qubit][std::size_t(m_index) * times.size() + t_index];
  }
  double max_over_time(int qubit, int m_index) const;
};

// One independent evolution per M grid point, amplitudes rescaled to
// ratio_i * M. Points run concurrently; assembly is order-independent and
// bit-identical to the serial result. Integration failures propagate with
// the offending M value attached.
PopulationMap run_sweep(const SweepConfig& config);

// M grid points where the target qubit's max-over-time population exceeds
// `threshold` and is a local maximum along M.
std::vector<double> find_resonances(const PopulationMap& map, int source_qubit, int target_qubit,
                                    double threshold = 0.5);

struct SelectivityMetric {
  double transfer = 0.0;  // max-over-time population of the partner qubit
  double leakage = 0.0;   // max-over-time population of the bystander
};

// Both maxima at M = m_star (must be a grid point; throws std::invalid_argument).
SelectivityMetric selectivity_metric(const PopulationMap& map, double m_star,
                                     std::pair<int, int> pair, int bystander);

// CSV matrix for one qubit: header row = time in ns (first field "M_GHz"),
// data rows = M in GHz followed by populations.
std::string population_csv(const PopulationMap& map, int qubit);

// FNV-1a over a canonical serialization; identical configs hash identically.
std::uint64_t config_hash(const SweepConfig& config);

}  // namespace acqsim
