#include "acqsim/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acqsim/units.hpp"
#include "lindblad_rhs.hpp"

namespace acqsim {

namespace detail {

namespace {

// Decompose into (row, col, value) triplets when the operator has at most one
// nonzero per row.
bool try_monomial(const ComplexMatrix& m, std::vector<int>& rows, std::vector<int>& cols,
                  std::vector<cplx>& vals) {
  rows.clear();
  cols.clear();
  vals.clear();
  for (int i = 0; i < m.rows(); ++i) {
    int found = -1;
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) != cplx(0.0)) {
        if (found >= 0) return false;
        found = j;
      }
    }
    if (found >= 0) {
      rows.push_back(i);
      cols.push_back(found);
      vals.push_back(m(i, found));
    }
  }
  return true;
}

}  // namespace

LiouvilleRhs::LiouvilleRhs(const ComplexMatrix& h_static, ModulatedDiagonal modulation,
                           const std::vector<CollapseChannel>& channels)
    : d_(h_static.rows()), mod_(std::move(modulation)), shift_(d_, 0.0), tmp_(std::size_t(d_) * d_) {
  // K = iH + 1/2 sum gamma c^dag c
  ComplexMatrix k(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) k(i, j) = cplx(0.0, 1.0) * h_static(i, j);

  for (const CollapseChannel& ch : channels) {
    if (ch.rate < 0.0) throw std::invalid_argument("collapse channel with negative rate");
    if (ch.rate == 0.0) continue;
    const ComplexMatrix& c = ch.op.matrix();
    if (c.rows() != d_) throw std::invalid_argument("collapse channel dimension mismatch");
    MonomialChannel mc;
    if (try_monomial(c, mc.row, mc.col, mc.val)) {
      const double s = std::sqrt(ch.rate);
      for (cplx& v : mc.val) v *= s;
      // c^dag c is diagonal for monomial c
      for (std::size_t e = 0; e < mc.row.size(); ++e)
        k(mc.col[e], mc.col[e]) += 0.5 * std::norm(mc.val[e]);
      monomial_.push_back(std::move(mc));
    } else {
      k += cplx(0.5 * ch.rate) * (c.dagger() * c);
      dense_.push_back(DenseChannel{ch.rate * c, c.dagger()});
    }
  }

  k_ = k;
  k_dag_ = k.dagger();
  k_diag_static_.resize(d_);
  for (int i = 0; i < d_; ++i) k_diag_static_[i] = k(i, i);
}

void LiouvilleRhs::operator()(double t, const cplx* y, cplx* dydt) {
  const auto& K = kernels::active_kernels();
  const std::size_t nn = std::size_t(d_) * d_;

  // patch the modulated diagonal: K += i*shift, K^dag -= i*shift
  if (mod_.active()) {
    std::fill(shift_.begin(), shift_.end(), 0.0);
    for (std::size_t q = 0; q < mod_.amplitudes.size(); ++q) {
      const double w = mod_.amplitudes[q] * std::cos(mod_.frequency * t + mod_.phases[q]);
      if (w == 0.0) continue;
      const std::vector<int>& occ = mod_.occupations[q];
      for (int b = 0; b < d_; ++b)
        if (occ[b]) shift_[b] += w;
    }
    for (int b = 0; b < d_; ++b) {
      const cplx base = k_diag_static_[b];
      k_(b, b) = base + cplx(0.0, shift_[b]);
      k_dag_(b, b) = std::conj(base) - cplx(0.0, shift_[b]);
    }
  }

  std::fill(dydt, dydt + nn, cplx(0.0));

  // jump terms: (sqrt(g)c) rho (sqrt(g)c)^dag
  for (const MonomialChannel& mc : monomial_) {
    const std::size_t ne = mc.row.size();
    for (std::size_t ei = 0; ei < ne; ++ei) {
      const int i = mc.row[ei];
      const std::size_t src_row = std::size_t(mc.col[ei]) * d_;
      const cplx vi = mc.val[ei];
      cplx* out = dydt + std::size_t(i) * d_;
      for (std::size_t ej = 0; ej < ne; ++ej) {
        out[mc.row[ej]] += vi * std::conj(mc.val[ej]) * y[src_row + mc.col[ej]];
      }
    }
  }
  for (const DenseChannel& dc : dense_) {
    K.cgemm(tmp_.data(), dc.left.data(), y, d_, d_, d_);
    K.cgemm_acc(dydt, tmp_.data(), dc.right.data(), d_, d_, d_);
  }

  // drift: dydt -= K rho + rho K^dag
  K.cgemm(tmp_.data(), k_.data(), y, d_, d_, d_);
  K.cgemm_acc(tmp_.data(), y, k_dag_.data(), d_, d_, d_);
  K.sub_inplace(reinterpret_cast<double*>(dydt), reinterpret_cast<const double*>(tmp_.data()),
                2 * nn);
}

std::vector<std::vector<int>> qubit_occupations(const SpaceLayout& layout) {
  std::vector<std::vector<int>> occ(layout.qubit_count());
  for (int q = 0; q < layout.qubit_count(); ++q) {
    occ[q].resize(layout.total_dim);
    for (int b = 0; b < layout.total_dim; ++b) occ[q][b] = layout.occupation(q, b);
  }
  return occ;
}

}  // namespace detail

std::vector<CollapseChannel> channels_from_spec(const SystemSpec& spec, const SpaceLayout& layout) {
  spec.validate();
  std::vector<CollapseChannel> out;
  if (spec.cavity_decay > 0.0)
    out.push_back({lowering_operator(layout, layout.cavity_index()), spec.cavity_decay});
  for (int q = 0; q < spec.qubit_count(); ++q) {
    if (spec.qubit_decay[q] > 0.0)
      out.push_back({lowering_operator(layout, q), spec.qubit_decay[q]});
  }
  for (int q = 0; q < spec.qubit_count(); ++q) {
    if (spec.qubit_dephasing[q] > 0.0)
      out.push_back({number_operator(layout, q), spec.qubit_dephasing[q]});
  }
  return out;
}

ComplexMatrix liouvillian_apply(const OperatorMatrix& h, const std::vector<CollapseChannel>& channels,
                                const ComplexMatrix& rho) {
  const ComplexMatrix& hm = h.matrix();
  if (hm.rows() != rho.rows() || !rho.square())
    throw std::invalid_argument("liouvillian_apply: dimension mismatch");
  ComplexMatrix drho = cplx(0.0, -1.0) * commutator(hm, rho);
  for (const CollapseChannel& ch : channels) {
    if (ch.rate == 0.0) continue;
    const ComplexMatrix& c = ch.op.matrix();
    if (c.rows() != rho.rows())
      throw std::invalid_argument("liouvillian_apply: channel dimension mismatch");
    const ComplexMatrix cdc = c.dagger() * c;
    drho += cplx(ch.rate) * (c * rho * c.dagger());
    drho += cplx(-0.5 * ch.rate) * anticommutator(cdc, rho);
  }
  return drho;
}

namespace {

double default_rk4_dt(const SystemSpec& spec, const DriveParams& drive) {
  // dt <= (2 pi / Delta) / 50; fall back to the fastest scale present when
  // the cavity is resonant.
  double w = std::abs(spec.cavity_detuning);
  for (std::size_t i = 0; i < spec.qubit_detunings.size(); ++i)
    w = std::max(w, std::abs(spec.qubit_detunings[i]) + drive.amplitudes[i]);
  w = std::max({w, 2.0 * spec.coupling_g, drive.frequency, spec.cavity_decay});
  if (w == 0.0) return std::numeric_limits<double>::infinity();
  return (two_pi / w) / 50.0;
}

}  // namespace

Trajectory evolve(const SystemSpec& spec, const DriveParams& drive, const DensityMatrix& rho0,
                  double t_end, int sample_count, const EvolveOptions& options) {
  spec.validate();
  drive.validate(spec.qubit_count());
  const SpaceLayout layout = build_space(spec);
  if (rho0.dim() != layout.total_dim)
    throw std::invalid_argument("evolve: initial state dimension mismatch");

  detail::ModulatedDiagonal mod;
  mod.frequency = drive.frequency;
  mod.amplitudes = drive.amplitudes;
  mod.phases = drive.phases;
  mod.occupations = detail::qubit_occupations(layout);

  detail::LiouvilleRhs rhs(h_static(spec, layout).matrix(), std::move(mod),
                           channels_from_spec(spec, layout));
  return detail::propagate(rhs, layout, rho0.matrix(), t_end, sample_count, options,
                           default_rk4_dt(spec, drive));
}

}  // namespace acqsim
