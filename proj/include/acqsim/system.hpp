#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace acqsim {

// Static physical parameters of the qubits-in-a-cavity system. All rates and
// frequencies are angular (rad/s), frame rotating at the reference optical
// frequency: qubit i carries its detuning delta_i, the cavity carries
// -cavity_detuning (sign convention Delta = omega_0 - omega_c).
struct SystemSpec {
  std::vector<double> qubit_detunings;   // delta_i
  double cavity_detuning = 0.0;          // Delta
  double coupling_g = 0.0;               // shared qubit-cavity coupling
  double cavity_decay = 0.0;             // gamma_a
  std::vector<double> qubit_decay;       // gamma_sigma,i
  std::vector<double> qubit_dephasing;   // gamma_sigma^dag sigma,i
  int fock_truncation = 3;               // cavity levels 0..n_max

  int qubit_count() const { return static_cast<int>(qubit_detunings.size()); }

  // Throws std::invalid_argument on violated invariants (negative rates,
  // n_max < 1, mismatched list lengths).
  void validate() const;

  // True when g/|Delta + delta_i| < 0.1 for all qubits. Advisory only: the
  // dispersive analytics degrade outside this regime but the full model does
  // not care.
  bool in_dispersive_regime() const;
};

// Classical acoustic drive: per-qubit frequency modulation
// delta_i(t) = delta_i + amplitude_i * cos(frequency*t + phase_i).
struct DriveParams {
  double frequency = 0.0;            // M (rad/s)
  std::vector<double> amplitudes;    // D_i (rad/s), >= 0
  std::vector<double> phases;        // phi_i (rad)

  static DriveParams off(int qubit_count) {
    return DriveParams{0.0, std::vector<double>(qubit_count, 0.0),
                       std::vector<double>(qubit_count, 0.0)};
  }

  void validate(int qubit_count) const;
  bool is_off() const;
};

// Tensor-product layout: qubit 1 x ... x qubit N x cavity, row-major
// (first factor varies slowest). Level 0 of each qubit is the ground state.
// Qubit-only layouts (effective models) drop the cavity factor.
struct SpaceLayout {
  std::vector<int> dims;   // [2,...,2, n_max+1]
  int total_dim = 0;
  bool has_cavity = true;

  int qubit_count() const { return static_cast<int>(dims.size()) - (has_cavity ? 1 : 0); }
  int cavity_levels() const { return has_cavity ? dims.back() : 0; }
  int subsystem_count() const { return static_cast<int>(dims.size()); }
  int cavity_index() const { return static_cast<int>(dims.size()) - 1; }

  // Occupation of subsystem `k` in basis state `b` (0/1 for qubits,
  // 0..n_max for the cavity).
  int occupation(int subsystem, int basis_state) const;

  // Basis index of the product state with the given per-subsystem levels.
  int basis_index(const std::vector<int>& levels) const;
};

SpaceLayout build_space(const SystemSpec& spec);

}  // namespace acqsim
