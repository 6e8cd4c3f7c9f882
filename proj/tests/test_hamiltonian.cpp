#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "acqsim/hamiltonian.hpp"
#include "acqsim/linalg.hpp"
#include "acqsim/units.hpp"

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

DriveParams paper_drive(const SystemSpec& s, double ratio, double delta_phi) {
  DriveParams d;
  d.frequency = angular_from_ghz(6.0);
  d.amplitudes.assign(s.qubit_count(), ratio * d.frequency);
  d.phases = {0.0, -delta_phi};
  return d;
}

}  // namespace

TEST_CASE("modulated_frequency") {
  const SystemSpec s = paper_two_qubit();
  DriveParams d = paper_drive(s, 0.92, std::numbers::pi);

  // t = 0, phi = 0: delta + D
  CHECK(modulated_frequency(s, d, 0, 0.0) ==
        doctest::Approx(s.qubit_detunings[0] + d.amplitudes[0]).epsilon(1e-14));
  // M t + phi = pi/2: back to delta
  const double t_quarter = (std::numbers::pi / 2 - d.phases[0]) / d.frequency;
  CHECK(modulated_frequency(s, d, 0, t_quarter) ==
        doctest::Approx(s.qubit_detunings[0]).scale(d.amplitudes[0]));
  // zero amplitude: delta for all t
  d.amplitudes[0] = 0.0;
  CHECK(modulated_frequency(s, d, 0, 0.37e-9) == s.qubit_detunings[0]);

  CHECK_THROWS_AS(modulated_frequency(s, d, 5, 0.0), std::invalid_argument);
}

TEST_CASE("h_static with g = 0 is diagonal with occupation sums") {
  SystemSpec s = paper_two_qubit();
  s.coupling_g = 0.0;
  const SpaceLayout layout = build_space(s);
  const ComplexMatrix h = h_static(s, layout).matrix();
  for (int b = 0; b < layout.total_dim; ++b) {
    double expected = 0.0;
    for (int q = 0; q < layout.qubit_count(); ++q)
      expected += s.qubit_detunings[q] * layout.occupation(q, b);
    expected -= s.cavity_detuning * layout.occupation(layout.cavity_index(), b);
    CHECK(std::abs(h(b, b) - cplx(expected)) < 1e-12 * std::abs(expected + 1.0));
    for (int c = 0; c < layout.total_dim; ++c)
      if (c != b) CHECK(std::abs(h(b, c)) == 0.0);
  }
}

TEST_CASE("single resonant qubit: one-excitation eigenvalues are +-g") {
  SystemSpec s;
  s.qubit_detunings = {0.0};
  s.cavity_detuning = 0.0;
  s.coupling_g = angular_from_ghz(5.0);
  s.qubit_decay = {0.0};
  s.qubit_dephasing = {0.0};
  s.fock_truncation = 1;
  const SpaceLayout layout = build_space(s);
  const auto eig = hermitian_eigs(h_static(s, layout).matrix());
  const double g = s.coupling_g;
  REQUIRE(eig.eigenvalues.size() == 4);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-g).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(0.0).scale(g));
  CHECK(eig.eigenvalues[2] == doctest::Approx(0.0).scale(g));
  CHECK(eig.eigenvalues[3] == doctest::Approx(g).epsilon(1e-12));
}

TEST_CASE("JC matrix element <e,g,0|H|g,g,1> equals g") {
  const SystemSpec s = paper_two_qubit();
  const SpaceLayout layout = build_space(s);
  const ComplexMatrix h = h_static(s, layout).matrix();
  const int eg0 = layout.basis_index({1, 0, 0});
  const int gg1 = layout.basis_index({0, 0, 1});
  CHECK(std::abs(h(eg0, gg1) - cplx(angular_from_ghz(5.0))) < 1e-3);  // exact up to fp
}

TEST_CASE("h_at reduces to h_static when undriven or at cos zero-crossings") {
  const SystemSpec s = paper_two_qubit();
  const SpaceLayout layout = build_space(s);
  const ComplexMatrix h0 = h_static(s, layout).matrix();

  DriveParams off = DriveParams::off(s.qubit_count());
  CHECK(max_abs_difference(h_at(s, off, layout, 0.7e-9).matrix(), h0) == 0.0);

  // equal phases, M t + phi = pi/2 for all qubits simultaneously
  DriveParams d = paper_drive(s, 0.92, 0.0);
  d.phases = {0.0, 0.0};
  const double t_quarter = (std::numbers::pi / 2) / d.frequency;
  CHECK(max_abs_difference(h_at(s, d, layout, t_quarter).matrix(), h0) < 1e-9 * h0.max_abs());
}

TEST_CASE("h_at minus h_static is the modulation diagonal") {
  const SystemSpec s = paper_two_qubit();
  const SpaceLayout layout = build_space(s);
  const DriveParams d = paper_drive(s, 0.92, std::numbers::pi);
  const double t = 0.123e-9;
  const ComplexMatrix diff = h_at(s, d, layout, t).matrix() - h_static(s, layout).matrix();
  for (int b = 0; b < layout.total_dim; ++b) {
    double expected = 0.0;
    for (int q = 0; q < layout.qubit_count(); ++q)
      expected += d.amplitudes[q] * std::cos(d.frequency * t + d.phases[q]) *
                  layout.occupation(q, b);
    CHECK(std::abs(diff(b, b) - cplx(expected)) < 1e-9 * std::abs(d.amplitudes[0]));
    for (int c = 0; c < layout.total_dim; ++c)
      if (c != b) CHECK(std::abs(diff(b, c)) == 0.0);
  }
}

TEST_CASE("h_at is hermitian and periodic in 2 pi / M") {
  const SystemSpec s = paper_two_qubit();
  const SpaceLayout layout = build_space(s);
  const DriveParams d = paper_drive(s, 0.92, std::numbers::pi);
  for (double t_ns : {0.0, 0.31, 1.7}) {
    const ComplexMatrix h = h_at(s, d, layout, seconds_from_ns(t_ns)).matrix();
    CHECK(h.is_hermitian(1e-12 * h.max_abs()));
    const ComplexMatrix h_shift =
        h_at(s, d, layout, seconds_from_ns(t_ns) + two_pi / d.frequency).matrix();
    CHECK(max_abs_difference(h, h_shift) < 1e-9 * h.max_abs());
  }
}

TEST_CASE("total excitation number commutes with H(t)") {
  const SystemSpec s = paper_two_qubit();
  const SpaceLayout layout = build_space(s);
  const DriveParams d = paper_drive(s, 0.92, std::numbers::pi);
  ComplexMatrix n_tot(layout.total_dim, layout.total_dim);
  for (int k = 0; k < layout.subsystem_count(); ++k)
    n_tot += number_operator(layout, k).matrix();
  const ComplexMatrix h = h_at(s, d, layout, 0.29e-9).matrix();
  CHECK(commutator(h, n_tot).max_abs() < 1e-12 * h.max_abs());
}
