#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "acqsim/sweep.hpp"
#include "acqsim/units.hpp"

using namespace acqsim;

namespace {

SystemSpec paper_system(int qubits) {
  SystemSpec s;
  s.qubit_detunings = {0.0, angular_from_ghz(6.0), angular_from_ghz(8.0)};
  s.qubit_detunings.resize(qubits);
  s.cavity_detuning = angular_from_ghz(250.0);
  s.coupling_g = angular_from_ghz(5.0);
  s.cavity_decay = angular_from_ghz(25.0);
  s.qubit_decay.assign(qubits, angular_from_mhz(5.0));
  s.qubit_dephasing.assign(qubits, 0.0);
  s.fock_truncation = 3;
  return s;
}

SweepConfig base_config(int qubits, SweepModel model) {
  SweepConfig cfg;
  cfg.system = paper_system(qubits);
  cfg.amplitude_ratios.assign(qubits, 0.92);
  cfg.phases.assign(qubits, -std::numbers::pi);
  cfg.phases[0] = 0.0;
  cfg.m_min = angular_from_ghz(2.0);
  cfg.m_max = angular_from_ghz(9.0);
  cfg.m_steps = 29;
  cfg.t_end = seconds_from_ns(20.0);
  cfg.sample_count = 101;
  cfg.excited_qubits = {0};
  cfg.model = model;
  return cfg;
}

}  // namespace

TEST_CASE("zero drive ratios: map rows are identical across M") {
  SweepConfig cfg = base_config(2, SweepModel::effective_timedep);
  cfg.amplitude_ratios = {0.0, 0.0};
  cfg.m_steps = 5;
  cfg.t_end = seconds_from_ns(5.0);
  cfg.sample_count = 21;
  const PopulationMap map = run_sweep(cfg);
  for (int q = 0; q < 2; ++q) {
    for (int m = 1; m < cfg.m_steps; ++m) {
      for (int k = 0; k < cfg.sample_count; ++k) {
        CHECK(map.population(q, m, k) == doctest::Approx(map.population(q, 0, k)).epsilon(1e-12));
      }
    }
  }
  // no-drive sweep has no resonances
  CHECK(find_resonances(map, 0, 1).empty());
}

TEST_CASE("secular-model sweep of the paper pair finds the 3 and 6 GHz resonances") {
  // closed-system secular model: start above 2.5 GHz, where the lossless
  // N = 3 harmonic at M = 2 GHz (suppressed by decay in the full model)
  // would otherwise cross the detection threshold over 20 ns
  SweepConfig cfg = base_config(2, SweepModel::effective_secular);
  cfg.m_min = angular_from_ghz(2.5);
  cfg.m_steps = 27;
  const PopulationMap map = run_sweep(cfg);

  // values are populations
  for (int q = 0; q < 2; ++q)
    for (std::size_t i = 0; i < map.populations[q].size(); ++i) {
      CHECK(map.populations[q][i] > -1e-6);
      CHECK(map.populations[q][i] < 1.0 + 1e-6);
    }

  const auto res = find_resonances(map, 0, 1);
  REQUIRE(res.size() == 2);
  const double step = (cfg.m_max - cfg.m_min) / (cfg.m_steps - 1);
  CHECK(std::abs(res[0] - angular_from_ghz(3.0)) <= step);
  CHECK(std::abs(res[1] - angular_from_ghz(6.0)) <= step);
}

TEST_CASE("three-qubit secular sweep: qubit 3 resonates at 4 and 8 GHz") {
  SweepConfig cfg = base_config(3, SweepModel::effective_secular);
  const PopulationMap map = run_sweep(cfg);
  const auto res = find_resonances(map, 0, 2);
  const double step = (cfg.m_max - cfg.m_min) / (cfg.m_steps - 1);
  REQUIRE(res.size() == 2);
  CHECK(std::abs(res[0] - angular_from_ghz(4.0)) <= step);
  CHECK(std::abs(res[1] - angular_from_ghz(8.0)) <= step);
}

TEST_CASE("full-model sweep of the paper pair: dips at delta12 and delta12/2") {
  SweepConfig cfg = base_config(2, SweepModel::full);
  cfg.m_steps = 15;  // 0.5 GHz spacing over [2, 9] GHz
  cfg.sample_count = 201;
  const PopulationMap map = run_sweep(cfg);

  const auto res = find_resonances(map, 0, 1);
  const double step = (cfg.m_max - cfg.m_min) / (cfg.m_steps - 1);
  REQUIRE(res.size() == 2);
  CHECK(std::abs(res[0] - angular_from_ghz(3.0)) <= step);  // 2M = delta12
  CHECK(std::abs(res[1] - angular_from_ghz(6.0)) <= step);  // M = delta12

  // qubit-1 dips anti-correlate with the qubit-2 maxima: on resonance the
  // population leaves qubit 1 within the first Rabi half-period, far faster
  // than the bare decay tail seen off resonance
  auto grid_index = [&](double m_ghz) {
    for (std::size_t m = 0; m < map.m_values.size(); ++m)
      if (std::abs(map.m_values[m] - angular_from_ghz(m_ghz)) < 1e-3) return int(m);
    REQUIRE(false);
    return -1;
  };
  auto p1_early = [&](double m_ghz) {  // minimum over the first 5 ns
    const int idx = grid_index(m_ghz);
    double lo = 1.0;
    for (std::size_t k = 0; k < map.times.size(); ++k)
      if (map.times[k] <= seconds_from_ns(5.0))
        lo = std::min(lo, map.population(0, idx, int(k)));
    return lo;
  };
  CHECK(p1_early(6.0) < 0.1);   // transferred out by the first Rabi maximum
  CHECK(p1_early(8.0) > 0.6);   // off resonance: bare decay only
  CHECK(map.max_over_time(1, grid_index(8.0)) < 0.1);
}

TEST_CASE("full-model and secular-model maps agree on the resonance location") {
  SweepConfig cfg = base_config(2, SweepModel::full);
  cfg.m_min = angular_from_ghz(5.5);
  cfg.m_max = angular_from_ghz(6.5);
  cfg.m_steps = 5;
  cfg.t_end = seconds_from_ns(6.0);
  cfg.sample_count = 61;
  const PopulationMap full = run_sweep(cfg);

  cfg.model = SweepModel::effective_secular;
  const PopulationMap secular = run_sweep(cfg);

  const auto res_full = find_resonances(full, 0, 1);
  const auto res_secular = find_resonances(secular, 0, 1);
  REQUIRE(res_full.size() == 1);
  REQUIRE(res_secular.size() == 1);
  const double step = (cfg.m_max - cfg.m_min) / (cfg.m_steps - 1);
  CHECK(std::abs(res_full[0] - res_secular[0]) <= step);
  CHECK(std::abs(res_full[0] - angular_from_ghz(6.0)) <= step);
}

TEST_CASE("parallel and serial sweeps produce bit-identical maps") {
  SweepConfig cfg = base_config(2, SweepModel::effective_secular);
  cfg.m_steps = 9;
  cfg.sample_count = 41;
  cfg.workers = 1;
  const PopulationMap serial = run_sweep(cfg);
  cfg.workers = 4;
  const PopulationMap parallel = run_sweep(cfg);

  CHECK(serial.config_hash == parallel.config_hash);
  for (int q = 0; q < 2; ++q) {
    REQUIRE(serial.populations[q].size() == parallel.populations[q].size());
    CHECK(std::memcmp(serial.populations[q].data(), parallel.populations[q].data(),
                      serial.populations[q].size() * sizeof(double)) == 0);
  }
}

TEST_CASE("config hash is stable and sensitive") {
  SweepConfig cfg = base_config(2, SweepModel::effective_secular);
  const std::uint64_t h1 = config_hash(cfg);
  CHECK(config_hash(cfg) == h1);
  cfg.amplitude_ratios[0] = 0.921;
  CHECK(config_hash(cfg) != h1);
}

TEST_CASE("selectivity_metric picks maxima at a grid point") {
  SweepConfig cfg = base_config(3, SweepModel::effective_secular);
  cfg.m_steps = 15;
  const PopulationMap map = run_sweep(cfg);
  const SelectivityMetric sel = selectivity_metric(map, angular_from_ghz(6.0), {0, 1}, 2);
  CHECK(sel.transfer > 0.5);
  CHECK(sel.leakage < 0.1);
  CHECK_THROWS_AS(selectivity_metric(map, angular_from_ghz(6.123), {0, 1}, 2),
                  std::invalid_argument);
}

TEST_CASE("population CSV layout") {
  SweepConfig cfg = base_config(2, SweepModel::effective_secular);
  cfg.m_steps = 3;
  cfg.m_min = angular_from_ghz(5.0);
  cfg.m_max = angular_from_ghz(7.0);
  cfg.sample_count = 4;
  cfg.t_end = seconds_from_ns(3.0);
  const PopulationMap map = run_sweep(cfg);
  const std::string csv = population_csv(map, 1);
  CHECK(csv.rfind("M_GHz,0,1,2,3\n", 0) == 0);
  // three data rows, starting with the M values in GHz
  CHECK(csv.find("\n5,") != std::string::npos);
  CHECK(csv.find("\n6,") != std::string::npos);
  CHECK(csv.find("\n7,") != std::string::npos);
}

TEST_CASE("sweep config validation") {
  SweepConfig cfg = base_config(2, SweepModel::full);
  cfg.m_min = cfg.m_max;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config(2, SweepModel::full);
  cfg.amplitude_ratios = {-0.1, 0.92};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config(2, SweepModel::full);
  cfg.excited_qubits = {7};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
