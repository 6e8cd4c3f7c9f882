#pragma once

#include <optional>
#include <vector>

#include "acqsim/hamiltonian.hpp"
#include "acqsim/ode.hpp"
#include "acqsim/operators.hpp"

namespace acqsim {

struct CollapseChannel {
  OperatorMatrix op;
  double rate = 0.0;  // gamma (rad/s), >= 0
};

// Channels {a: gamma_a}, {sigma_j: gamma_sigma_j}, {sigma_j^dag sigma_j:
// gamma_deph_j}; zero-rate channels omitted.
std::vector<CollapseChannel> channels_from_spec(const SystemSpec& spec, const SpaceLayout& layout);

// (1/i)[H, rho] + sum_c (gamma_c/2)(2 c rho c^dag - {c^dag c, rho}).
// Reference implementation via generic matrix products; the integrator uses
// an algebraically equivalent fast path (equivalence-tested).
ComplexMatrix liouvillian_apply(const OperatorMatrix& h, const std::vector<CollapseChannel>& channels,
                                const ComplexMatrix& rho);

enum class IntegrationMethod { adaptive_rk45, fixed_rk4 };

struct EvolveOptions {
  Tolerances tol{1e-8, 1e-10};
  IntegrationMethod method = IntegrationMethod::adaptive_rk45;
  // Fixed-step mode: dt cap; 0 means the default (2*pi/|Delta|)/50 (falls
  // back to the fastest system scale when Delta = 0).
  double rk4_dt_max = 0.0;
  bool record_snapshots = false;
  double trace_tolerance = 1e-6;  // drift beyond this is an integration failure
};

struct Trajectory {
  std::vector<double> times;                          // seconds, uniform grid
  std::vector<std::vector<double>> qubit_population;  // [qubit][sample]
  std::vector<double> cavity_population;              // [sample]; empty if no cavity
  std::vector<double> trace_real;                     // [sample]
  std::vector<double> purity;                         // [sample], tr(rho^2)
  std::vector<ComplexMatrix> snapshots;               // per sample if recorded
  IntegratorStats stats;

  int sample_count() const { return static_cast<int>(times.size()); }
};

// Integrate d rho/dt with H = h_at(t) and the spec's collapse channels;
// observables on a uniform grid of `sample_count` points spanning [0, t_end].
// Throws IntegrationError on step underflow or trace drift.
Trajectory evolve(const SystemSpec& spec, const DriveParams& drive, const DensityMatrix& rho0,
                  double t_end, int sample_count, const EvolveOptions& options = {});

}  // namespace acqsim
