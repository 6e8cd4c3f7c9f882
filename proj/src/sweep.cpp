#include "acqsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "acqsim/effective.hpp"
#include "acqsim/units.hpp"
#include "lindblad_rhs.hpp"

namespace acqsim {

std::vector<double> SweepConfig::m_grid() const {
  std::vector<double> grid(m_steps);
  if (m_steps == 1) {
    grid[0] = m_min;
    return grid;
  }
  for (int k = 0; k < m_steps; ++k)
    grid[k] = m_min + (m_max - m_min) * double(k) / double(m_steps - 1);
  return grid;
}

void SweepConfig::validate() const {
  system.validate();
  const int n = system.qubit_count();
  if (static_cast<int>(amplitude_ratios.size()) != n)
    throw std::invalid_argument("SweepConfig: amplitude_ratios length != qubit count");
  if (static_cast<int>(phases.size()) != n)
    throw std::invalid_argument("SweepConfig: phases length != qubit count");
  for (double r : amplitude_ratios)
    if (r < 0.0) throw std::invalid_argument("SweepConfig: negative amplitude ratio");
  if (m_steps < 1) throw std::invalid_argument("SweepConfig: need at least one M grid point");
  if (!(m_min > 0.0)) throw std::invalid_argument("SweepConfig: M grid must be positive");
  if (m_steps > 1 && !(m_max > m_min))
    throw std::invalid_argument("SweepConfig: M grid must be strictly increasing");
  if (!(t_end > 0.0)) throw std::invalid_argument("SweepConfig: t_end must be > 0");
  if (sample_count < 2) throw std::invalid_argument("SweepConfig: sample_count must be >= 2");
  for (int q : excited_qubits)
    if (q < 0 || q >= n) throw std::invalid_argument("SweepConfig: excited qubit out of range");
}

namespace {

// Secular sweep model: every pair keeps its nearest drive harmonic with the
// residual detuning explicit,
//   H(t) = sum_{i<j} G^{N_ij}_ij e^{i(N_ij M - delta_ij) t} s_i^dag s_j + h.c.
class RotatingPairRhs {
 public:
  RotatingPairRhs(const DispersiveCouplings& couplings, const DriveParams& drive) {
    const int n = couplings.qubit_count();
    const SpaceLayout layout = qubit_only_layout(n);
    d_ = layout.total_dim;
    h_ = ComplexMatrix(d_, d_);
    tmp_.resize(std::size_t(d_) * d_);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const double det = couplings.effective_detuning(i, j);
        if (det <= 0.0) continue;  // each pair once, ordered by raising detuning
        const int order =
            std::max(1, static_cast<int>(std::lround(det / drive.frequency)));
        const SecularCoupling sc =
            secular_coupling(couplings.j[i][j], drive, {i, j}, order, SecularMode::closed_form);
        const ComplexMatrix op = lowering_operator(layout, i).matrix().dagger() *
                                 lowering_operator(layout, j).matrix();
        pairs_.push_back({op, op.dagger(), sc.g, order * drive.frequency - det});
      }
    }
  }

  int dim() const { return d_; }

  void operator()(double t, const cplx* y, cplx* dydt) {
    std::fill(h_.data(), h_.data() + h_.size(), cplx(0.0));
    for (const PairTerm& p : pairs_) {
      const cplx f = p.g * std::exp(cplx(0.0, p.rotation * t));
      const cplx fc = std::conj(f);
      for (std::size_t k = 0; k < h_.size(); ++k)
        h_.data()[k] += f * p.op.data()[k] + fc * p.op_dag.data()[k];
    }
    const auto& K = kernels::active_kernels();
    K.cgemm(tmp_.data(), h_.data(), y, d_, d_, d_);
    K.cgemm(dydt, y, h_.data(), d_, d_, d_);
    for (std::size_t k = 0; k < tmp_.size(); ++k)
      dydt[k] = cplx(0.0, -1.0) * (tmp_[k] - dydt[k]);
  }

 private:
  struct PairTerm {
    ComplexMatrix op;      // s_i^dag s_j
    ComplexMatrix op_dag;
    cplx g;
    double rotation;       // N*M - delta_ij
  };
  int d_ = 0;
  ComplexMatrix h_;
  std::vector<cplx> tmp_;
  std::vector<PairTerm> pairs_;
};

Trajectory run_single(const SweepConfig& config, double m_value) {
  const int n = config.system.qubit_count();
  DriveParams drive;
  drive.frequency = m_value;
  drive.phases = config.phases;
  drive.amplitudes.resize(n);
  for (int q = 0; q < n; ++q) drive.amplitudes[q] = config.amplitude_ratios[q] * m_value;

  EvolveOptions opts;
  opts.tol = config.tol;

  switch (config.model) {
    case SweepModel::full: {
      const SpaceLayout layout = build_space(config.system);
      return evolve(config.system, drive, initial_state(layout, config.excited_qubits),
                    config.t_end, config.sample_count, opts);
    }
    case SweepModel::effective_timedep: {
      const DispersiveCouplings c = dispersive_couplings(config.system);
      EffectiveEvolveOptions eopt;
      eopt.model = EffectiveModel::time_dependent;
      eopt.tol = config.tol;
      return evolve_effective(c, config.system, drive,
                              initial_state_qubits(n, config.excited_qubits), config.t_end,
                              config.sample_count, eopt);
    }
    case SweepModel::effective_secular: {
      const DispersiveCouplings c = dispersive_couplings(config.system);
      RotatingPairRhs rhs(c, drive);
      const SpaceLayout layout = qubit_only_layout(n);
      const DensityMatrix rho0 = initial_state_qubits(n, config.excited_qubits);
      return detail::propagate(rhs, layout, rho0.matrix(), config.t_end, config.sample_count,
                               opts, config.t_end / 2000.0);
    }
  }
  throw std::logic_error("run_single: unknown sweep model");
}

}  // namespace

PopulationMap run_sweep(const SweepConfig& config) {
  config.validate();
  const int n = config.system.qubit_count();
  const std::vector<double> grid = config.m_grid();
  const int samples = config.sample_count;

  PopulationMap map;
  map.m_values = grid;
  map.times.resize(samples);
  for (int k = 0; k < samples; ++k)
    map.times[k] = config.t_end * double(k) / double(samples - 1);
  map.populations.assign(n, std::vector<double>(grid.size() * samples, 0.0));
  map.config_hash = config_hash(config);

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<IntegratorStats> point_stats(grid.size());

  auto worker = [&]() {
    while (true) {
      const std::size_t m = next.fetch_add(1);
      if (m >= grid.size()) return;
      try {
        const Trajectory traj = run_single(config, grid[m]);
        for (int q = 0; q < n; ++q) {
          for (int k = 0; k < samples; ++k)
            map.populations[q][m * samples + k] = traj.qubit_population[q][k];
        }
        point_stats[m] = traj.stats;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          try {
            std::throw_with_nested(
                IntegrationError("sweep point M = " + std::to_string(ghz_from_angular(grid[m])) +
                                 " GHz failed"));
          } catch (...) {
            first_error = std::current_exception();
          }
        }
        return;
      }
    }
  };

  int workers = config.workers > 0 ? config.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(grid.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  for (const IntegratorStats& s : point_stats) {
    map.stats.steps_accepted += s.steps_accepted;
    map.stats.steps_rejected += s.steps_rejected;
    map.stats.rhs_evaluations += s.rhs_evaluations;
    map.stats.min_step = std::min(map.stats.min_step, s.min_step);
    map.stats.max_step = std::max(map.stats.max_step, s.max_step);
  }
  return map;
}

double PopulationMap::max_over_time(int qubit, int m_index) const {
  double best = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k)
    best = std::max(best, populations[qubit][std::size_t(m_index) * times.size() + k]);
  return best;
}

std::vector<double> find_resonances(const PopulationMap& map, int source_qubit, int target_qubit,
                                    double threshold) {
  if (map.m_values.empty()) throw std::invalid_argument("find_resonances: empty map");
  if (source_qubit < 0 || source_qubit >= map.qubit_count() || target_qubit < 0 ||
      target_qubit >= map.qubit_count())
    throw std::invalid_argument("find_resonances: qubit index out of range");

  const int m_count = static_cast<int>(map.m_values.size());
  std::vector<double> peak(m_count);
  for (int m = 0; m < m_count; ++m) peak[m] = map.max_over_time(target_qubit, m);

  std::vector<double> out;
  for (int m = 0; m < m_count; ++m) {
    if (peak[m] <= threshold) continue;
    const bool left_ok = (m == 0) || peak[m] >= peak[m - 1];
    const bool right_ok = (m == m_count - 1) || peak[m] >= peak[m + 1];
    if (left_ok && right_ok) out.push_back(map.m_values[m]);
  }
  return out;
}

SelectivityMetric selectivity_metric(const PopulationMap& map, double m_star,
                                     std::pair<int, int> pair, int bystander) {
  int found = -1;
  for (std::size_t m = 0; m < map.m_values.size(); ++m) {
    if (std::abs(map.m_values[m] - m_star) <= 1e-9 * std::max(std::abs(m_star), 1.0)) {
      found = static_cast<int>(m);
      break;
    }
  }
  if (found < 0) throw std::invalid_argument("selectivity_metric: M value not on the sweep grid");
  SelectivityMetric metric;
  metric.transfer = map.max_over_time(pair.second, found);
  metric.leakage = map.max_over_time(bystander, found);
  return metric;
}

std::string population_csv(const PopulationMap& map, int qubit) {
  std::ostringstream out;
  out.precision(12);
  out << "M_GHz";
  for (double t : map.times) out << "," << ns_from_seconds(t);
  out << "\n";
  for (std::size_t m = 0; m < map.m_values.size(); ++m) {
    out << ghz_from_angular(map.m_values[m]);
    for (std::size_t k = 0; k < map.times.size(); ++k)
      out << "," << map.populations[qubit][m * map.times.size() + k];
    out << "\n";
  }
  return out.str();
}

std::uint64_t config_hash(const SweepConfig& config) {
  std::ostringstream s;
  s.precision(17);
  s << "system:";
  for (double v : config.system.qubit_detunings) s << v << ",";
  s << ";" << config.system.cavity_detuning << ";" << config.system.coupling_g << ";"
    << config.system.cavity_decay << ";";
  for (double v : config.system.qubit_decay) s << v << ",";
  s << ";";
  for (double v : config.system.qubit_dephasing) s << v << ",";
  s << ";" << config.system.fock_truncation << "|drive:";
  for (double v : config.amplitude_ratios) s << v << ",";
  s << ";";
  for (double v : config.phases) s << v << ",";
  s << "|grid:" << config.m_min << "," << config.m_max << "," << config.m_steps;
  s << "|run:" << config.t_end << "," << config.sample_count << "," << config.tol.rel << ","
    << config.tol.abs << "," << static_cast<int>(config.model) << "|excited:";
  for (int q : config.excited_qubits) s << q << ",";

  const std::string text = s.str();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace acqsim
