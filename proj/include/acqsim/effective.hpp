#pragma once

#include <complex>
#include <utility>

#include "acqsim/lindblad.hpp"
#include "acqsim/operators.hpp"
#include "acqsim/system.hpp"

namespace acqsim {

// Bessel function of the first kind, Miller downward recurrence normalized by
// the completeness identity. Documented domain |order| <= 200, |x| <= 50;
// absolute accuracy 1e-12. Throws std::domain_error outside.
double bessel_j(int order, double x);

// Dispersive qubit-qubit couplings J_ij = g^2 (Delta_i + Delta_j) /
// (2 Delta_i Delta_j) with Delta_i = Delta + delta_i, plus the effective
// detunings delta_ij = delta_j - delta_i + J_jj - J_ii.
struct DispersiveCouplings {
  std::vector<std::vector<double>> j;  // N x N, symmetric (rad/s)
  std::vector<double> lamb_shift;      // J_ii (rad/s)
  std::vector<double> qubit_detunings; // delta_i carried along (rad/s)

  int qubit_count() const { return static_cast<int>(lamb_shift.size()); }
  // delta_j - delta_i + J_jj - J_ii
  double effective_detuning(int i, int j) const;
};

DispersiveCouplings dispersive_couplings(const SystemSpec& spec);

// H_eff = sum_i delta_i n_i + sum_ij J_ij sigma_i^dag sigma_j on the 2^N
// qubit-only space (cavity eliminated).
OperatorMatrix effective_hamiltonian(const DispersiveCouplings& couplings);

// Numerically exact dispersive transform: builds U = exp(sum_i (g/Delta_i)
// (a^dag sigma_i - a sigma_i^dag)), forms U^dag H U, projects onto the
// zero-photon block and returns the max-norm deviation from H_eff.
double dispersive_transform_residual(const SystemSpec& spec, const SpaceLayout& layout);

// Graf addition-theorem parameters for the two-qubit sideband sum:
// z = sqrt(u^2 + v^2 - 2 u v cos dphi), u = D1/M, v = D2/M, and the angle
// psi with z cos(psi) = u - v cos(dphi), z sin(psi) = v sin(dphi).
std::pair<double, double> graf_params(double d1, double d2, double m, double delta_phi);

// Drive-induced secular coupling between a qubit pair at harmonic order N.
struct SecularCoupling {
  int order = 1;            // N
  std::complex<double> g;   // G^N (rad/s)
  double z = 0.0;           // Graf argument
  double psi = 0.0;         // Graf angle (rad)
  double delta_phi = 0.0;   // phi_i - phi_j (rad)

  double magnitude() const { return std::abs(g); }
};

enum class SecularMode { series, closed_form };

// J_12 e^{i N phi_1} sum_n J_{n+N}(D1/M) J_n(D2/M) e^{i n dphi}  (series), or
// J_12 e^{i N phi_1} e^{i N psi} J_N(z)                          (closed form).
// Truncation |n| <= ceil(max amplitude ratio) + 40; throws std::domain_error
// if that exceeds the Bessel domain.
SecularCoupling secular_coupling(double j12, const DriveParams& drive, std::pair<int, int> pair,
                                 int order, SecularMode mode);

// argmax over D/M in (0, 5] of |J_N(2 D/M)| (equal amplitudes, dphi = pi),
// bracketed scalar maximization to 1e-6.
double optimal_drive_amplitude(int order);

enum class EffectiveModel { time_dependent, secular };

struct EffectiveEvolveOptions {
  EffectiveModel model = EffectiveModel::time_dependent;
  std::pair<int, int> pair{0, 1};  // secular mode: coupled pair (0-based)
  int order = 0;                   // secular harmonic; 0 = round(delta_ij / M)
  Tolerances tol{1e-8, 1e-10};
};

// Closed-system evolution on the qubit-only space, under either the full
// time-dependent effective Hamiltonian sum_i w_i(t) n_i + sum_ij J_ij
// sigma_i^dag sigma_j, or the secular pair Hamiltonian G sigma_i^dag sigma_j + h.c.
Trajectory evolve_effective(const DispersiveCouplings& couplings, const SystemSpec& spec,
                            const DriveParams& drive, const DensityMatrix& rho0_qubits,
                            double t_end, int sample_count,
                            const EffectiveEvolveOptions& options = {});

// Qubit-only layout helper (2^N space, no cavity factor) for preparing
// effective-model initial states.
SpaceLayout qubit_only_layout(int qubit_count);
DensityMatrix initial_state_qubits(int qubit_count, const std::set<int>& excited_qubits);

}  // namespace acqsim
