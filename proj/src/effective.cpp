#include "acqsim/effective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acqsim/linalg.hpp"
#include "acqsim/units.hpp"
#include "lindblad_rhs.hpp"

namespace acqsim {

double bessel_j(int order, double x) {
  if (std::abs(order) > 200 || std::abs(x) > 50.0)
    throw std::domain_error("bessel_j: outside documented domain |order| <= 200, |x| <= 50");

  double sign = 1.0;
  if (x < 0.0) {  // J_n(-x) = (-1)^n J_n(x)
    x = -x;
    if (order % 2 != 0) sign = -sign;
  }
  int n = order;
  if (n < 0) {  // J_{-n}(x) = (-1)^n J_n(x)
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? sign : 0.0;

  // Miller downward recurrence normalized by J_0 + 2*sum J_{2k} = 1.
  int start = std::max(n, static_cast<int>(std::ceil(x))) + 50;
  if (start % 2 != 0) ++start;

  double j_above = 0.0;     // J_{k+1}
  double j_k = 1e-300;      // J_k, k = start
  double j_n = (n == start) ? j_k : 0.0;
  double norm = 2.0 * j_k;  // start is even and > 0

  for (int k = start; k >= 1; --k) {
    const double j_below = (2.0 * k / x) * j_k - j_above;
    j_above = j_k;
    j_k = j_below;  // now J_{k-1}
    if (std::abs(j_k) > 1e250) {
      j_k *= 1e-250;
      j_above *= 1e-250;
      norm *= 1e-250;
      j_n *= 1e-250;
    }
    const int idx = k - 1;
    if (idx == n) j_n = j_k;
    if (idx == 0)
      norm += j_k;
    else if (idx % 2 == 0)
      norm += 2.0 * j_k;
  }
  return sign * j_n / norm;
}

double DispersiveCouplings::effective_detuning(int i, int j) const {
  return qubit_detunings[j] - qubit_detunings[i] + lamb_shift[j] - lamb_shift[i];
}

DispersiveCouplings dispersive_couplings(const SystemSpec& spec) {
  spec.validate();
  const int n = spec.qubit_count();
  const double g2 = spec.coupling_g * spec.coupling_g;
  DispersiveCouplings out;
  out.qubit_detunings = spec.qubit_detunings;
  out.j.assign(n, std::vector<double>(n, 0.0));
  out.lamb_shift.resize(n);
  std::vector<double> big_delta(n);
  for (int i = 0; i < n; ++i) {
    big_delta[i] = spec.cavity_detuning + spec.qubit_detunings[i];
    if (big_delta[i] == 0.0)
      throw std::invalid_argument("dispersive_couplings: vanishing qubit-cavity detuning");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.j[i][j] = g2 * (big_delta[i] + big_delta[j]) / (2.0 * big_delta[i] * big_delta[j]);
    }
    out.lamb_shift[i] = out.j[i][i];
  }
  return out;
}

SpaceLayout qubit_only_layout(int qubit_count) {
  if (qubit_count < 1) throw std::invalid_argument("qubit_only_layout: need at least one qubit");
  SpaceLayout layout;
  layout.dims.assign(qubit_count, 2);
  layout.has_cavity = false;
  layout.total_dim = 1 << qubit_count;
  return layout;
}

DensityMatrix initial_state_qubits(int qubit_count, const std::set<int>& excited_qubits) {
  return initial_state(qubit_only_layout(qubit_count), excited_qubits);
}

OperatorMatrix effective_hamiltonian(const DispersiveCouplings& couplings) {
  const int n = couplings.qubit_count();
  const SpaceLayout layout = qubit_only_layout(n);
  ComplexMatrix h(layout.total_dim, layout.total_dim);
  std::vector<ComplexMatrix> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = lowering_operator(layout, i).matrix();
  for (int i = 0; i < n; ++i) {
    h += cplx(couplings.qubit_detunings[i]) * number_operator(layout, i).matrix();
    for (int j = 0; j < n; ++j) {
      h += cplx(couplings.j[i][j]) * (sigma[i].dagger() * sigma[j]);
    }
  }
  return OperatorMatrix::hermitian(std::move(h));
}

double dispersive_transform_residual(const SystemSpec& spec, const SpaceLayout& layout) {
  spec.validate();
  const ComplexMatrix a = lowering_operator(layout, layout.cavity_index()).matrix();
  const ComplexMatrix a_dag = a.dagger();

  ComplexMatrix x(layout.total_dim, layout.total_dim);
  for (int i = 0; i < layout.qubit_count(); ++i) {
    const double big_delta = spec.cavity_detuning + spec.qubit_detunings[i];
    if (big_delta == 0.0)
      throw std::invalid_argument("dispersive_transform_residual: vanishing detuning");
    const ComplexMatrix sigma = lowering_operator(layout, i).matrix();
    x += cplx(spec.coupling_g / big_delta) * (a_dag * sigma - a * sigma.dagger());
  }
  const ComplexMatrix u = expm_antihermitian(x);
  const ComplexMatrix transformed = u.dagger() * h_static(spec, layout).matrix() * u;

  // zero-photon block: cavity is the fastest index, so b = q*(n_max+1)
  const int levels = layout.cavity_levels();
  const int dq = 1 << layout.qubit_count();
  ComplexMatrix block(dq, dq);
  for (int qi = 0; qi < dq; ++qi)
    for (int qj = 0; qj < dq; ++qj) block(qi, qj) = transformed(qi * levels, qj * levels);

  const ComplexMatrix h_eff = effective_hamiltonian(dispersive_couplings(spec)).matrix();
  return max_abs_difference(block, h_eff);
}

std::pair<double, double> graf_params(double d1, double d2, double m, double delta_phi) {
  if (!(m > 0.0)) throw std::invalid_argument("graf_params: drive frequency must be > 0");
  const double u = d1 / m;
  const double v = d2 / m;
  const double z2 = u * u + v * v - 2.0 * u * v * std::cos(delta_phi);
  const double z = std::sqrt(std::max(z2, 0.0));
  if (z < 1e-300) return {0.0, 0.0};
  // A&S 9.1.79: z cos(psi) = u - v cos(dphi), z sin(psi) = v sin(dphi)
  const double psi = std::atan2(v * std::sin(delta_phi), u - v * std::cos(delta_phi));
  return {z, psi};
}

SecularCoupling secular_coupling(double j12, const DriveParams& drive, std::pair<int, int> pair,
                                 int order, SecularMode mode) {
  const int nq = static_cast<int>(drive.amplitudes.size());
  const auto [i, j] = pair;
  if (i < 0 || j < 0 || i >= nq || j >= nq || i == j)
    throw std::invalid_argument("secular_coupling: bad qubit pair");
  if (order < 1) throw std::invalid_argument("secular_coupling: order must be >= 1");
  if (!(drive.frequency > 0.0))
    throw std::invalid_argument("secular_coupling: drive frequency must be > 0");

  const double m = drive.frequency;
  const double u = drive.amplitudes[i] / m;
  const double v = drive.amplitudes[j] / m;
  const double delta_phi = drive.phases[i] - drive.phases[j];
  const int n_cut = static_cast<int>(std::ceil(std::max(u, v))) + 40;
  if (n_cut + order > 200)
    throw std::domain_error("secular_coupling: series truncation exceeds Bessel domain");

  SecularCoupling out;
  out.order = order;
  out.delta_phi = delta_phi;
  std::tie(out.z, out.psi) = graf_params(drive.amplitudes[i], drive.amplitudes[j], m, delta_phi);

  const cplx global = j12 * std::exp(cplx(0.0, order * drive.phases[i]));
  if (mode == SecularMode::closed_form) {
    out.g = global * std::exp(cplx(0.0, order * out.psi)) * bessel_j(order, out.z);
  } else {
    cplx sum = 0.0;
    for (int k = -n_cut; k <= n_cut; ++k) {
      const double term = bessel_j(k + order, u) * bessel_j(k, v);
      if (term == 0.0) continue;
      sum += term * std::exp(cplx(0.0, k * delta_phi));
    }
    out.g = global * sum;
  }
  return out;
}

double optimal_drive_amplitude(int order) {
  if (order < 1) throw std::invalid_argument("optimal_drive_amplitude: order must be >= 1");
  auto f = [order](double r) { return std::abs(bessel_j(order, 2.0 * r)); };

  // coarse scan, then golden-section refinement of the winning bracket
  const double r_max = 5.0;
  const int scan = 2000;
  double best_r = r_max, best_f = f(r_max);
  for (int k = 1; k < scan; ++k) {
    const double r = r_max * double(k) / double(scan);
    const double v = f(r);
    if (v > best_f) {
      best_f = v;
      best_r = r;
    }
  }
  double lo = std::max(0.0, best_r - r_max / scan);
  double hi = std::min(r_max, best_r + r_max / scan);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > 1e-8) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

Trajectory evolve_effective(const DispersiveCouplings& couplings, const SystemSpec& spec,
                            const DriveParams& drive, const DensityMatrix& rho0_qubits,
                            double t_end, int sample_count, const EffectiveEvolveOptions& options) {
  const int n = couplings.qubit_count();
  drive.validate(n);
  const SpaceLayout layout = qubit_only_layout(n);
  if (rho0_qubits.dim() != layout.total_dim)
    throw std::invalid_argument("evolve_effective: initial state dimension mismatch");

  EvolveOptions eopt;
  eopt.tol = options.tol;

  if (options.model == EffectiveModel::time_dependent) {
    detail::ModulatedDiagonal mod;
    mod.frequency = drive.frequency;
    mod.amplitudes = drive.amplitudes;
    mod.phases = drive.phases;
    mod.occupations = detail::qubit_occupations(layout);
    detail::LiouvilleRhs rhs(effective_hamiltonian(couplings).matrix(), std::move(mod), {});
    const double w_max = std::max(drive.frequency, spec.coupling_g);
    return detail::propagate(rhs, layout, rho0_qubits.matrix(), t_end, sample_count, eopt,
                             w_max > 0 ? (two_pi / w_max) / 50.0 : t_end / 1000.0);
  }

  // secular pair model: H = G sigma_i^dag sigma_j + h.c., exactly resonant
  const auto [i, j] = options.pair;
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw std::invalid_argument("evolve_effective: bad secular pair");
  int order = options.order;
  if (order <= 0) {
    const double det = std::abs(couplings.effective_detuning(i, j));
    order = std::max(1, static_cast<int>(std::lround(det / drive.frequency)));
  }
  const SecularCoupling sc =
      secular_coupling(couplings.j[i][j], drive, {i, j}, order, SecularMode::series);

  const ComplexMatrix si = lowering_operator(layout, i).matrix();
  const ComplexMatrix sj = lowering_operator(layout, j).matrix();
  ComplexMatrix h = sc.g * (si.dagger() * sj);
  h += h.dagger();
  detail::LiouvilleRhs rhs(h, detail::ModulatedDiagonal{}, {});
  const double w = std::max(std::abs(sc.g), 1.0 / t_end);
  return detail::propagate(rhs, layout, rho0_qubits.matrix(), t_end, sample_count, eopt,
                           (two_pi / w) / 50.0);
}

}  // namespace acqsim
