#pragma once

// Internal propagation machinery shared by the full Lindblad model and the
// effective qubit-only models.

#include <cmath>
#include <string>
#include <vector>

#include "acqsim/complex_matrix.hpp"
#include "acqsim/kernels.hpp"
#include "acqsim/lindblad.hpp"
#include "acqsim/ode.hpp"
#include "acqsim/system.hpp"

namespace acqsim::detail {

// Sinusoidally modulated diagonal: shift(t)[b] = sum_q D_q cos(M t + phi_q) *
// occupations[q][b], added to the static Hamiltonian's diagonal.
struct ModulatedDiagonal {
  double frequency = 0.0;
  std::vector<double> amplitudes;
  std::vector<double> phases;
  std::vector<std::vector<int>> occupations;

  bool active() const {
    for (double a : amplitudes)
      if (a != 0.0) return true;
    return false;
  }
};

// d rho/dt = -(K rho + rho K^dag) + sum_c (sqrt(g)c) rho (sqrt(g)c)^dag with
// K = i H(t) + 1/2 sum_c gamma c^dag c. H(t)'s time dependence is purely
// diagonal, so K is patched in O(d) per evaluation. Channels whose operator
// has at most one nonzero per row (every channel the physics produces:
// sigma_j, a, sigma_j^dag sigma_j) use an O(d^2) gather; anything else falls
// back to dense products.
class LiouvilleRhs {
 public:
  LiouvilleRhs(const ComplexMatrix& h_static, ModulatedDiagonal modulation,
               const std::vector<CollapseChannel>& channels);

  int dim() const { return d_; }

  void operator()(double t, const cplx* y, cplx* dydt);

 private:
  struct MonomialChannel {
    // nonempty rows only: entry (row, col, sqrt(gamma) * value)
    std::vector<int> row;
    std::vector<int> col;
    std::vector<cplx> val;
  };
  struct DenseChannel {
    ComplexMatrix left;   // gamma * c
    ComplexMatrix right;  // c^dag
  };

  int d_ = 0;
  ModulatedDiagonal mod_;
  ComplexMatrix k_;       // K with the t = 0 static diagonal
  ComplexMatrix k_dag_;
  std::vector<cplx> k_diag_static_;  // unpatched diagonals of K
  std::vector<double> shift_;        // scratch: diagonal shift at t
  std::vector<MonomialChannel> monomial_;
  std::vector<DenseChannel> dense_;
  std::vector<cplx> tmp_;            // d*d scratch
};

// Common sampling loop: integrates rhs over [0, t_end], records observables
// on a uniform grid, enforces the trace contract.
template <class Rhs>
Trajectory propagate(Rhs& rhs, const SpaceLayout& layout, const ComplexMatrix& rho0, double t_end,
                     int sample_count, const EvolveOptions& options, double rk4_dt_default) {
  if (!(t_end > 0.0)) throw std::invalid_argument("propagate: t_end must be > 0");
  if (sample_count < 2) throw std::invalid_argument("propagate: sample_count must be >= 2");
  const int d = rho0.rows();
  const int nq = layout.qubit_count();

  Trajectory traj;
  traj.times.resize(sample_count);
  traj.qubit_population.assign(nq, std::vector<double>(sample_count));
  if (layout.has_cavity) traj.cavity_population.resize(sample_count);
  traj.trace_real.resize(sample_count);
  traj.purity.resize(sample_count);
  if (options.record_snapshots) traj.snapshots.reserve(sample_count);

  std::vector<cplx> y(rho0.data(), rho0.data() + rho0.size());

  auto record = [&](int k, double t) {
    traj.times[k] = t;
    cplx tr = 0.0;
    for (int b = 0; b < d; ++b) tr += y[std::size_t(b) * d + b];
    if (std::abs(tr - cplx(1.0)) > options.trace_tolerance) {
      throw IntegrationError("trace drift " + std::to_string(std::abs(tr - cplx(1.0))) +
                             " beyond tolerance at t = " + std::to_string(t) + " s");
    }
    traj.trace_real[k] = tr.real();
    for (int q = 0; q < nq; ++q) {
      double pop = 0.0;
      for (int b = 0; b < d; ++b)
        if (layout.occupation(q, b)) pop += y[std::size_t(b) * d + b].real();
      traj.qubit_population[q][k] = pop;
    }
    if (layout.has_cavity) {
      double pop = 0.0;
      for (int b = 0; b < d; ++b)
        pop += layout.occupation(layout.cavity_index(), b) * y[std::size_t(b) * d + b].real();
      traj.cavity_population[k] = pop;
    }
    double pur = 0.0;
    for (const cplx& v : y) pur += std::norm(v);
    traj.purity[k] = pur;
    if (options.record_snapshots) {
      ComplexMatrix snap(d, d);
      std::copy(y.begin(), y.end(), snap.data());
      traj.snapshots.push_back(std::move(snap));
    }
  };

  double t = 0.0;
  record(0, 0.0);
  if (options.method == IntegrationMethod::adaptive_rk45) {
    Dopri5 stepper(y.size());
    for (int k = 1; k < sample_count; ++k) {
      const double t_k = t_end * double(k) / double(sample_count - 1);
      stepper.advance(rhs, y, t, t_k, options.tol, traj.stats);
      record(k, t_k);
    }
  } else {
    const double dt_max = options.rk4_dt_max > 0.0 ? options.rk4_dt_max : rk4_dt_default;
    Rk4Fixed stepper(y.size(), dt_max);
    for (int k = 1; k < sample_count; ++k) {
      const double t_k = t_end * double(k) / double(sample_count - 1);
      stepper.advance(rhs, y, t, t_k, traj.stats);
      record(k, t_k);
    }
  }
  return traj;
}

// Qubit occupation tables for a layout (occupations[q][b] in {0,1}).
std::vector<std::vector<int>> qubit_occupations(const SpaceLayout& layout);

}  // namespace acqsim::detail
