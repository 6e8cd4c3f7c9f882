#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "acqsim/errors.hpp"
#include "acqsim/kernels.hpp"

namespace acqsim {

struct Tolerances {
  double rel = 1e-8;
  double abs = 1e-10;
};

struct IntegratorStats {
  long steps_accepted = 0;
  long steps_rejected = 0;
  long rhs_evaluations = 0;
  double min_step = std::numeric_limits<double>::infinity();
  double max_step = 0.0;

  void note_step(double h) {
    min_step = std::min(min_step, h);
    max_step = std::max(max_step, h);
  }
};

namespace detail {
// Dormand-Prince 5(4) tableau
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a2[1] = {1.0 / 5};
inline constexpr double dp_a3[2] = {3.0 / 40, 9.0 / 40};
inline constexpr double dp_a4[3] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
inline constexpr double dp_a5[4] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
inline constexpr double dp_a6[5] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                                    -5103.0 / 18656};
// b coefficients (5th order solution; also row 7 of a, FSAL)
inline constexpr double dp_b[6] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
                                   11.0 / 84};
// b - b_hat (error estimate weights, includes k7 term)
inline constexpr double dp_e[7] = {71.0 / 57600,  0.0, -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
}  // namespace detail

// Adaptive embedded Runge-Kutta 4(5) on a flattened complex state.
// rhs(t, y, dydt) fills dydt; y and dydt are contiguous arrays of size().
class Dopri5 {
 public:
  explicit Dopri5(std::size_t n)
      : n_(n), k_(7, std::vector<kernels::cplx>(n)), ytmp_(n), ynew_(n), yerr_(n) {}

  std::size_t size() const { return n_; }

  // Forget cached state (FSAL slope and step size); required after the
  // caller modifies y between advance() calls.
  void reset() {
    have_k1_ = false;
    h_ = 0.0;
  }

  template <class Rhs>
  void advance(Rhs&& rhs, std::vector<kernels::cplx>& y, double& t, double t_target,
               const Tolerances& tol, IntegratorStats& stats) {
    const auto& K = kernels::active_kernels();
    const std::size_t nd = 2 * n_;
    auto dbl = [](std::vector<kernels::cplx>& v) { return reinterpret_cast<double*>(v.data()); };
    const double span = t_target - t;
    if (span <= 0.0) return;

    if (!have_k1_) {
      rhs(t, y.data(), k_[0].data());
      ++stats.rhs_evaluations;
      have_k1_ = true;
    }
    if (h_ <= 0.0) {
      h_ = initial_step(rhs, y, t, t_target, tol, stats);
    }

    bool rejected_last = false;
    while (t < t_target) {
      const double remaining = t_target - t;
      double h = std::min(h_, remaining);
      if (!(h > 0.0) || h <= std::abs(t) * 1e3 * std::numeric_limits<double>::epsilon()) {
        throw IntegrationError("step-size underflow at t = " + std::to_string(t) + " s (h = " +
                               std::to_string(h) + " s)");
      }

      // stages 2..6
      stage(K, dbl, y, h, detail::dp_a2, 1);
      rhs(t + detail::dp_c[1] * h, ytmp_.data(), k_[1].data());
      stage(K, dbl, y, h, detail::dp_a3, 2);
      rhs(t + detail::dp_c[2] * h, ytmp_.data(), k_[2].data());
      stage(K, dbl, y, h, detail::dp_a4, 3);
      rhs(t + detail::dp_c[3] * h, ytmp_.data(), k_[3].data());
      stage(K, dbl, y, h, detail::dp_a5, 4);
      rhs(t + detail::dp_c[4] * h, ytmp_.data(), k_[4].data());
      stage(K, dbl, y, h, detail::dp_a6, 5);
      rhs(t + detail::dp_c[5] * h, ytmp_.data(), k_[5].data());

      // 5th-order solution (row 7 = b, FSAL)
      ynew_ = y;
      for (int j = 0; j < 6; ++j) {
        if (detail::dp_b[j] != 0.0)
          K.axpy(dbl(ynew_), h * detail::dp_b[j], reinterpret_cast<const double*>(k_[j].data()),
                 nd);
      }
      rhs(t + h, ynew_.data(), k_[6].data());
      stats.rhs_evaluations += 6;

      // embedded error estimate
      std::fill(yerr_.begin(), yerr_.end(), kernels::cplx(0.0));
      for (int j = 0; j < 7; ++j) {
        if (detail::dp_e[j] != 0.0)
          K.axpy(dbl(yerr_), h * detail::dp_e[j], reinterpret_cast<const double*>(k_[j].data()),
                 nd);
      }
      const double err =
          K.wrms_norm(reinterpret_cast<const double*>(yerr_.data()),
                      reinterpret_cast<const double*>(y.data()),
                      reinterpret_cast<const double*>(ynew_.data()), tol.abs, tol.rel, nd);

      if (err <= 1.0) {
        stats.note_step(h);
        ++stats.steps_accepted;
        t = (remaining - h <= 1e-14 * std::abs(t_target)) ? t_target : t + h;
        y.swap(ynew_);
        k_[0].swap(k_[6]);  // FSAL
        const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        const double facmax = rejected_last ? 1.0 : 5.0;
        h_ = h * std::min(facmax, std::max(0.2, fac));
        rejected_last = false;
      } else {
        ++stats.steps_rejected;
        const double fac = 0.9 * std::pow(err, -0.2);
        h_ = h * std::max(0.2, std::min(1.0, fac));
        rejected_last = true;
      }
    }
  }

 private:
  template <class K, class Dbl>
  void stage(const K& kops, Dbl dbl, std::vector<kernels::cplx>& y, double h, const double* a,
             int count) {
    ytmp_ = y;
    for (int j = 0; j < count; ++j) {
      if (a[j] != 0.0)
        kops.axpy(dbl(ytmp_), h * a[j], reinterpret_cast<const double*>(k_[j].data()), 2 * n_);
    }
  }

  // Hairer-style automatic initial step size (two extra RHS evaluations).
  template <class Rhs>
  double initial_step(Rhs&& rhs, const std::vector<kernels::cplx>& y, double t, double t_target,
                      const Tolerances& tol, IntegratorStats& stats) {
    const double* y0 = reinterpret_cast<const double*>(y.data());
    const double* f0 = reinterpret_cast<const double*>(k_[0].data());
    const std::size_t nd = 2 * n_;
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < nd; ++i) {
      const double sc = tol.abs + tol.rel * std::abs(y0[i]);
      d0 += (y0[i] / sc) * (y0[i] / sc);
      d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / double(nd));
    d1 = std::sqrt(d1 / double(nd));
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * (t_target - t) : 0.01 * (d0 / d1);
    h0 = std::min(h0, t_target - t);

    ytmp_ = y;
    kernels::active_kernels().axpy(reinterpret_cast<double*>(ytmp_.data()), h0, f0, nd);
    rhs(t + h0, ytmp_.data(), yerr_.data());
    ++stats.rhs_evaluations;
    const double* f1 = reinterpret_cast<const double*>(yerr_.data());
    double d2 = 0.0;
    for (std::size_t i = 0; i < nd; ++i) {
      const double sc = tol.abs + tol.rel * std::abs(y0[i]);
      const double df = (f1[i] - f0[i]) / sc;
      d2 += df * df;
    }
    d2 = std::sqrt(d2 / double(nd)) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = (dmax <= 1e-15) ? std::max(1e-6 * (t_target - t), h0 * 1e-3)
                                      : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, t_target - t});
  }

  std::size_t n_;
  std::vector<std::vector<kernels::cplx>> k_;
  std::vector<kernels::cplx> ytmp_, ynew_, yerr_;
  double h_ = 0.0;
  bool have_k1_ = false;
};

// Fixed-step classic RK4, the cross-check integrator. Steps are chosen so the
// target time is hit exactly with dt <= dt_max.
class Rk4Fixed {
 public:
  explicit Rk4Fixed(std::size_t n, double dt_max)
      : n_(n), dt_max_(dt_max), k1_(n), k2_(n), k3_(n), k4_(n), ytmp_(n) {}

  template <class Rhs>
  void advance(Rhs&& rhs, std::vector<kernels::cplx>& y, double& t, double t_target,
               IntegratorStats& stats) {
    const auto& K = kernels::active_kernels();
    const std::size_t nd = 2 * n_;
    const double span = t_target - t;
    if (span <= 0.0) return;
    const long substeps = std::max(1L, static_cast<long>(std::ceil(span / dt_max_)));
    const double dt = span / double(substeps);
    auto d = [](std::vector<kernels::cplx>& v) { return reinterpret_cast<double*>(v.data()); };
    auto cd = [](const std::vector<kernels::cplx>& v) {
      return reinterpret_cast<const double*>(v.data());
    };
    for (long s = 0; s < substeps; ++s) {
      const double ts = t + double(s) * dt;
      rhs(ts, y.data(), k1_.data());
      ytmp_ = y;
      K.axpy(d(ytmp_), dt / 2, cd(k1_), nd);
      rhs(ts + dt / 2, ytmp_.data(), k2_.data());
      ytmp_ = y;
      K.axpy(d(ytmp_), dt / 2, cd(k2_), nd);
      rhs(ts + dt / 2, ytmp_.data(), k3_.data());
      ytmp_ = y;
      K.axpy(d(ytmp_), dt, cd(k3_), nd);
      rhs(ts + dt, ytmp_.data(), k4_.data());
      K.axpy(d(y), dt / 6, cd(k1_), nd);
      K.axpy(d(y), dt / 3, cd(k2_), nd);
      K.axpy(d(y), dt / 3, cd(k3_), nd);
      K.axpy(d(y), dt / 6, cd(k4_), nd);
      stats.rhs_evaluations += 4;
      ++stats.steps_accepted;
      stats.note_step(dt);
    }
    t = t_target;
  }

 private:
  std::size_t n_;
  double dt_max_;
  std::vector<kernels::cplx> k1_, k2_, k3_, k4_, ytmp_;
};

}  // namespace acqsim
