#include "acqsim/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "acqsim/effective.hpp"
#include "acqsim/units.hpp"

namespace acqsim {

double SidebandComb::total_weight() const {
  double s = 0.0;
  for (const Line& l : lines) s += l.weight;
  return s;
}

double SidebandComb::weight(int n) const {
  const int n_max = (static_cast<int>(lines.size()) - 1) / 2;
  if (n < -n_max || n > n_max) return 0.0;
  return lines[n + n_max].weight;
}

SidebandComb sideband_comb(double amplitude, double drive_frequency, int n_max) {
  if (!(drive_frequency > 0.0))
    throw std::invalid_argument("sideband_comb: drive frequency must be > 0");
  if (amplitude < 0.0) throw std::invalid_argument("sideband_comb: negative amplitude");
  const double ratio = amplitude / drive_frequency;
  const int required = static_cast<int>(std::ceil(ratio)) + 20;
  if (n_max < required)
    throw std::invalid_argument("sideband_comb: n_max too small for tail mass < 1e-10 (need >= " +
                                std::to_string(required) + ")");

  SidebandComb comb;
  comb.drive_frequency = drive_frequency;
  comb.lines.reserve(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) {
    const double jn = bessel_j(n, ratio);
    comb.lines.push_back({n * drive_frequency, jn * jn});
  }
  return comb;
}

std::vector<double> render_spectrum(const SidebandComb& comb, double linewidth,
                                    const std::vector<double>& grid) {
  if (linewidth < 0.0) throw std::invalid_argument("render_spectrum: negative linewidth");
  std::vector<double> density(grid.size(), 0.0);
  if (grid.empty()) return density;

  if (linewidth == 0.0) {
    // stick rendering: weight/grid-spacing at the nearest grid point
    for (const auto& line : comb.lines) {
      std::size_t best = 0;
      double best_dist = std::abs(grid[0] - line.offset);
      for (std::size_t k = 1; k < grid.size(); ++k) {
        const double dist = std::abs(grid[k] - line.offset);
        if (dist < best_dist) {
          best_dist = dist;
          best = k;
        }
      }
      const double spacing =
          grid.size() > 1 ? std::abs(grid[1] - grid[0]) : 1.0;
      density[best] += line.weight / spacing;
    }
    return density;
  }

  const double hwhm = 0.5 * linewidth;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double s = 0.0;
    for (const auto& line : comb.lines) {
      const double d = grid[k] - line.offset;
      s += line.weight * (hwhm / std::numbers::pi) / (d * d + hwhm * hwhm);
    }
    density[k] = s;
  }
  return density;
}

std::string comb_to_csv(const SidebandComb& comb) {
  std::ostringstream out;
  out.precision(12);
  out << "offset_hz,weight\n";
  for (const auto& line : comb.lines) {
    out << hz_from_angular(line.offset) << "," << line.weight << "\n";
  }
  return out.str();
}

}  // namespace acqsim
