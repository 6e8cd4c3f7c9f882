#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "acqsim/effective.hpp"
#include "acqsim/linalg.hpp"
#include "acqsim/units.hpp"
#include "oracles.hpp"

using namespace acqsim;

namespace {

SystemSpec paper_two_qubit() {
  SystemSpec s;
  s.qubit_detunings = {0.0, angular_from_ghz(6.0)};
  s.cavity_detuning = angular_from_ghz(250.0);
  s.coupling_g = angular_from_ghz(5.0);
  s.cavity_decay = angular_from_ghz(25.0);
  s.qubit_decay = {angular_from_mhz(5.0), angular_from_mhz(5.0)};
  s.qubit_dephasing = {0.0, 0.0};
  s.fock_truncation = 3;
  return s;
}

DriveParams drive_for(double m, std::vector<double> amplitudes, std::vector<double> phases) {
  DriveParams d;
  d.frequency = m;
  d.amplitudes = std::move(amplitudes);
  d.phases = std::move(phases);
  return d;
}

}  // namespace

TEST_CASE("bessel_j against the quadrature oracle") {
  // values frozen from the integral-representation oracle
  CHECK(bessel_j(1, 1.8412) == doctest::Approx(0.58186522422764308).epsilon(1e-13));
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int n : {1, 2, 7, 50}) CHECK(bessel_j(n, 0.0) == 0.0);

  for (int n : {0, 1, 2, 3, 5, 11, 40}) {
    for (double x : {0.05, 0.92, 1.8412, 3.8, 12.5, 30.0, 49.5}) {
      INFO("n=", n, " x=", x);
      CHECK(std::abs(bessel_j(n, x) - oracles::bessel_j_quadrature(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("bessel_j symmetries") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ux(0.01, 45.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = ux(rng);
    const int n = int(rng() % 15);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    CHECK(bessel_j(-n, x) == doctest::Approx(sign * bessel_j(n, x)).epsilon(1e-13).scale(1.0));
    CHECK(bessel_j(n, -x) == doctest::Approx(sign * bessel_j(n, x)).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("sideband completeness: sum of squared Bessel values is 1") {
  for (double x : {0.4, 0.92, 1.8412, 7.3, 24.0}) {
    const int n_cut = static_cast<int>(std::ceil(x)) + 40;
    double sum = 0.0;
    for (int n = -n_cut; n <= n_cut; ++n) {
      const double j = bessel_j(n, x);
      sum += j * j;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("bessel_j domain limits") {
  CHECK_THROWS_AS(bessel_j(201, 1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(0, 50.5), std::domain_error);
  CHECK_NOTHROW(bessel_j(200, 50.0));
}

TEST_CASE("dispersive couplings for the paper parameters") {
  const SystemSpec s = paper_two_qubit();
  const DispersiveCouplings c = dispersive_couplings(s);

  // J_11 = g^2/Delta_1 = 2pi x 100 MHz, exact formula
  CHECK(c.j[0][0] == doctest::Approx(angular_from_mhz(100.0)).epsilon(1e-12));
  // J_12 = g^2 (Delta_1+Delta_2) / (2 Delta_1 Delta_2) = 2pi x 98.828125 MHz
  CHECK(c.j[0][1] == doctest::Approx(angular_from_mhz(98.828125)).epsilon(1e-12));
  CHECK(c.j[1][0] == c.j[0][1]);  // symmetric by construction

  // degenerate qubits: all entries equal g^2/Delta
  SystemSpec deg = s;
  deg.qubit_detunings = {0.0, 0.0};
  const DispersiveCouplings cd = dispersive_couplings(deg);
  const double j = deg.coupling_g * deg.coupling_g / deg.cavity_detuning;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) CHECK(cd.j[i][k] == doctest::Approx(j).epsilon(1e-14));

  SystemSpec resonant = s;
  resonant.cavity_detuning = 0.0;
  CHECK_THROWS_AS(dispersive_couplings(resonant), std::invalid_argument);
}

TEST_CASE("effective Hamiltonian single-excitation block") {
  const SystemSpec s = paper_two_qubit();
  const DispersiveCouplings c = dispersive_couplings(s);
  const ComplexMatrix h = effective_hamiltonian(c).matrix();

  const SpaceLayout lq = qubit_only_layout(2);
  const int eg = lq.basis_index({1, 0});
  const int ge = lq.basis_index({0, 1});
  CHECK(h(eg, eg).real() ==
        doctest::Approx(s.qubit_detunings[0] + c.j[0][0]).epsilon(1e-14));
  CHECK(h(ge, ge).real() ==
        doctest::Approx(s.qubit_detunings[1] + c.j[1][1]).epsilon(1e-14));
  CHECK(h(eg, ge).real() == doctest::Approx(c.j[0][1]).epsilon(1e-14));

  // degenerate qubits: splitting of the block is 2 J_12
  SystemSpec deg = s;
  deg.qubit_detunings = {0.0, 0.0};
  const DispersiveCouplings cd = dispersive_couplings(deg);
  const ComplexMatrix hd = effective_hamiltonian(cd).matrix();
  ComplexMatrix block(2, 2);
  block(0, 0) = hd(eg, eg);
  block(0, 1) = hd(eg, ge);
  block(1, 0) = hd(ge, eg);
  block(1, 1) = hd(ge, ge);
  const auto eig = hermitian_eigs(block);
  CHECK(eig.eigenvalues[1] - eig.eigenvalues[0] ==
        doctest::Approx(2.0 * cd.j[0][1]).epsilon(1e-12));
}

TEST_CASE("detuned qubits are effectively isolated: eigenvector overlap > 0.999") {
  const SystemSpec s = paper_two_qubit();
  const DispersiveCouplings c = dispersive_couplings(s);

  // independent 2x2 oracle: mixing angle of [[d1+J11, J12],[J12, d2+J22]]
  const double a = s.qubit_detunings[0] + c.j[0][0];
  const double b = s.qubit_detunings[1] + c.j[1][1];
  const double j = c.j[0][1];
  const double theta = 0.5 * std::atan2(2.0 * j, b - a);
  const double overlap_oracle = std::cos(theta);
  CHECK(overlap_oracle > 0.999);

  const ComplexMatrix h = effective_hamiltonian(c).matrix();
  const SpaceLayout lq = qubit_only_layout(2);
  const int eg = lq.basis_index({1, 0});
  const int ge = lq.basis_index({0, 1});
  ComplexMatrix block(2, 2);
  block(0, 0) = h(eg, eg);
  block(0, 1) = h(eg, ge);
  block(1, 0) = h(ge, eg);
  block(1, 1) = h(ge, ge);
  const auto eig = hermitian_eigs(block);
  const double overlap = std::abs(eig.eigenvectors(0, 0));  // lower state vs bare qubit 1
  CHECK(overlap > 0.999);
  CHECK(overlap == doctest::Approx(overlap_oracle).epsilon(1e-9));
}

TEST_CASE("effective single-excitation spectrum matches the full static Hamiltonian") {
  const SystemSpec s = paper_two_qubit();
  const SpaceLayout layout = build_space(s);
  const DispersiveCouplings c = dispersive_couplings(s);

  // qubit-like single-excitation eigenvalues of the effective model
  const ComplexMatrix h_eff = effective_hamiltonian(c).matrix();
  const SpaceLayout lq = qubit_only_layout(2);
  const int eg = lq.basis_index({1, 0});
  const int ge = lq.basis_index({0, 1});
  ComplexMatrix block(2, 2);
  block(0, 0) = h_eff(eg, eg);
  block(0, 1) = h_eff(eg, ge);
  block(1, 0) = h_eff(ge, eg);
  block(1, 1) = h_eff(ge, ge);
  const auto eff = hermitian_eigs(block);

  const auto full = hermitian_eigs(h_static(s, layout).matrix());

  // second-order dispersive bound (g/Delta)^2 * g
  const double bound = std::pow(s.coupling_g / s.cavity_detuning, 2) * s.coupling_g;
  for (double lambda_eff : eff.eigenvalues) {
    double nearest = std::numeric_limits<double>::infinity();
    for (double lambda_full : full.eigenvalues)
      nearest = std::min(nearest, std::abs(lambda_full - lambda_eff));
    CHECK(nearest < bound);
  }
}

TEST_CASE("dispersive transform residual: zero at g = 0, small and g^4-scaled at g > 0") {
  SystemSpec s = paper_two_qubit();
  const SpaceLayout layout = build_space(s);

  SystemSpec free = s;
  free.coupling_g = 0.0;
  CHECK(dispersive_transform_residual(free, build_space(free)) < 1e-9);

  // paper parameters: residual far below the second-order bound (g/Delta)^2 * g
  const double res = dispersive_transform_residual(s, layout);
  const double bound = std::pow(s.coupling_g / s.cavity_detuning, 2) * s.coupling_g;
  CHECK(res > 0.0);
  CHECK(res < bound);
  CHECK(res < 1e-3 * s.coupling_g);

  // halving g: odd BCH orders vanish on the zero-photon block, so the
  // residual drops by 2^4 = 16, not 2^3
  SystemSpec half = s;
  half.coupling_g = 0.5 * s.coupling_g;
  const double res_half = dispersive_transform_residual(half, build_space(half));
  CHECK(res / res_half == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("graf_params reductions") {
  const double m = angular_from_ghz(6.0);
  const double d = 0.92 * m;

  auto [z1, psi1] = graf_params(d, d, m, std::numbers::pi);
  CHECK(z1 == doctest::Approx(2.0 * 0.92).epsilon(1e-14));

  auto [z2, psi2] = graf_params(d, d, m, 0.0);
  CHECK(z2 == doctest::Approx(0.0).scale(1.0));
  CHECK(psi2 == 0.0);

  auto [z3, psi3] = graf_params(d, 0.0, m, 1.234);
  CHECK(z3 == doctest::Approx(0.92).epsilon(1e-14));
  CHECK(psi3 == doctest::Approx(0.0).scale(1.0));

  CHECK_THROWS_AS(graf_params(d, d, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("secular coupling: series and closed form agree on random drives") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> ur(0.0, 3.0);
  std::uniform_real_distribution<double> uphi(1e-6, std::numbers::pi);
  const double m = angular_from_ghz(6.0);
  const double j12 = angular_from_mhz(98.828125);
  for (int trial = 0; trial < 60; ++trial) {
    const int order = 1 + int(rng() % 5);
    const DriveParams d =
        drive_for(m, {ur(rng) * m, ur(rng) * m}, {0.0, -uphi(rng)});
    const SecularCoupling series = secular_coupling(j12, d, {0, 1}, order, SecularMode::series);
    const SecularCoupling closed =
        secular_coupling(j12, d, {0, 1}, order, SecularMode::closed_form);
    CHECK(std::abs(series.g - closed.g) < 1e-10 * j12);
    CHECK(series.magnitude() <= j12 * (1.0 + 1e-12));
  }
}

TEST_CASE("secular coupling: closed form tracks the series beyond delta_phi = pi") {
  const double m = angular_from_ghz(6.0);
  const double j12 = angular_from_mhz(98.828125);
  for (double dphi : {3.5, 4.7, 6.0}) {
    const DriveParams d = drive_for(m, {0.7 * m, 1.3 * m}, {0.0, -dphi});
    const SecularCoupling series = secular_coupling(j12, d, {0, 1}, 1, SecularMode::series);
    const SecularCoupling closed = secular_coupling(j12, d, {0, 1}, 1, SecularMode::closed_form);
    CHECK(std::abs(series.g - closed.g) < 1e-10 * j12);
  }
}

TEST_CASE("secular series rejects drives beyond the truncation domain") {
  const double m = angular_from_ghz(6.0);
  const double j12 = angular_from_mhz(98.828125);
  const DriveParams d = drive_for(m, {170.0 * m, 0.5 * m}, {0.0, 0.0});
  CHECK_THROWS_AS(secular_coupling(j12, d, {0, 1}, 1, SecularMode::series), std::domain_error);
  CHECK_THROWS_AS(secular_coupling(j12, d, {0, 1}, 0, SecularMode::series),
                  std::invalid_argument);
  CHECK_THROWS_AS(secular_coupling(j12, d, {0, 0}, 1, SecularMode::series),
                  std::invalid_argument);
}

TEST_CASE("in-phase equal drives decouple the pair") {
  const double m = angular_from_ghz(6.0);
  const double j12 = angular_from_mhz(98.828125);
  const DriveParams d = drive_for(m, {0.92 * m, 0.92 * m}, {0.4, 0.4});
  for (int order = 1; order <= 3; ++order) {
    const SecularCoupling series = secular_coupling(j12, d, {0, 1}, order, SecularMode::series);
    const SecularCoupling closed = secular_coupling(j12, d, {0, 1}, order, SecularMode::closed_form);
    CHECK(series.magnitude() < 1e-12 * j12);
    CHECK(closed.magnitude() < 1e-12 * j12);
  }
}

TEST_CASE("optimal drive at N=1 with opposite phases: |G| = J12 * J1(1.84)") {
  const double m = angular_from_ghz(6.0);
  const double j12 = angular_from_mhz(98.828125);
  const DriveParams d = drive_for(m, {0.92 * m, 0.92 * m}, {0.0, -std::numbers::pi});
  const SecularCoupling sc = secular_coupling(j12, d, {0, 1}, 1, SecularMode::series);
  const double expected = j12 * oracles::bessel_j_quadrature(1, 1.84);
  CHECK(sc.magnitude() == doctest::Approx(expected).epsilon(1e-10));
  CHECK(sc.magnitude() / j12 == doctest::Approx(0.5819).epsilon(1e-3));
}

TEST_CASE("single-sided drive collapses the series to one term") {
  const double m = angular_from_ghz(6.0);
  const double j12 = angular_from_mhz(98.828125);
  const double phi1 = 0.77;
  const DriveParams d = drive_for(m, {1.1 * m, 0.0}, {phi1, 0.3});
  const SecularCoupling sc = secular_coupling(j12, d, {0, 1}, 1, SecularMode::series);
  const cplx expected = j12 * std::exp(cplx(0.0, phi1)) * bessel_j(1, 1.1);
  CHECK(std::abs(sc.g - expected) < 1e-12 * j12);
}

TEST_CASE("|G| is invariant under a global drive-phase shift") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> u(0.0, two_pi);
  const double m = angular_from_ghz(6.0);
  const double j12 = angular_from_mhz(98.828125);
  for (int trial = 0; trial < 20; ++trial) {
    const double phi1 = u(rng), dphi = u(rng), shift = u(rng);
    const DriveParams a = drive_for(m, {0.8 * m, 1.4 * m}, {phi1, phi1 - dphi});
    const DriveParams b = drive_for(m, {0.8 * m, 1.4 * m}, {phi1 + shift, phi1 - dphi + shift});
    const double ga = secular_coupling(j12, a, {0, 1}, 2, SecularMode::series).magnitude();
    const double gb = secular_coupling(j12, b, {0, 1}, 2, SecularMode::series).magnitude();
    CHECK(ga == doctest::Approx(gb).epsilon(1e-11));
  }
}

TEST_CASE("|G^1| peaks at the 0.92 drive ratio") {
  const double m = angular_from_ghz(6.0);
  const double j12 = angular_from_mhz(98.828125);
  auto mag = [&](double ratio) {
    const DriveParams d = drive_for(m, {ratio * m, ratio * m}, {0.0, -std::numbers::pi});
    return secular_coupling(j12, d, {0, 1}, 1, SecularMode::closed_form).magnitude();
  };
  CHECK(mag(0.92) > mag(0.3));
  CHECK(mag(0.92) > mag(2.0));
}

TEST_CASE("optimal_drive_amplitude matches the Bessel-oracle maxima") {
  CHECK(optimal_drive_amplitude(1) == doctest::Approx(0.9205918906703297).epsilon(1e-4));
  CHECK(std::abs(optimal_drive_amplitude(1) - 0.9206) < 0.001);
  CHECK(std::abs(optimal_drive_amplitude(2) - 1.5271184641) < 0.01);
  CHECK(std::abs(optimal_drive_amplitude(3) - 2.1005944706) < 0.01);
  CHECK_THROWS_AS(optimal_drive_amplitude(0), std::invalid_argument);
}

TEST_CASE("secular-mode evolution is an analytic Rabi oscillation") {
  const SystemSpec s = paper_two_qubit();
  const DispersiveCouplings c = dispersive_couplings(s);
  const double m = angular_from_ghz(6.0);
  const DriveParams d = drive_for(m, {0.92 * m, 0.92 * m}, {0.0, -std::numbers::pi});

  EffectiveEvolveOptions opts;
  opts.model = EffectiveModel::secular;
  const double t_end = seconds_from_ns(10.0);
  const Trajectory traj = evolve_effective(c, s, d, initial_state_qubits(2, {0}), t_end, 201, opts);

  const double g_mag =
      secular_coupling(c.j[0][1], d, {0, 1}, 1, SecularMode::series).magnitude();
  for (int k = 0; k < traj.sample_count(); ++k) {
    const double expected = std::pow(std::sin(g_mag * traj.times[k]), 2);
    CHECK(traj.qubit_population[1][k] == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
  }

  // first maximum at pi/(2|G|) with the paper's couplings: about 4.35 ns
  const double t_first = std::numbers::pi / (2.0 * g_mag);
  CHECK(ns_from_seconds(t_first) == doctest::Approx(4.3475).epsilon(1e-3));
}

TEST_CASE("time-dependent effective model tracks the secular envelope within 0.05") {
  const SystemSpec s = paper_two_qubit();
  const DispersiveCouplings c = dispersive_couplings(s);
  const double m = angular_from_ghz(6.0);
  const DriveParams d = drive_for(m, {0.92 * m, 0.92 * m}, {0.0, -std::numbers::pi});
  const double t_end = seconds_from_ns(10.0);

  EffectiveEvolveOptions timedep;
  timedep.model = EffectiveModel::time_dependent;
  const Trajectory full =
      evolve_effective(c, s, d, initial_state_qubits(2, {0}), t_end, 201, timedep);

  EffectiveEvolveOptions secular;
  secular.model = EffectiveModel::secular;
  const Trajectory sec =
      evolve_effective(c, s, d, initial_state_qubits(2, {0}), t_end, 201, secular);

  double worst = 0.0;
  for (int k = 0; k < full.sample_count(); ++k)
    worst = std::max(worst,
                     std::abs(full.qubit_population[1][k] - sec.qubit_population[1][k]));
  CHECK(worst < 0.05);
}
