#pragma once

#include <string>
#include <vector>

namespace acqsim {

// Emission comb of a single frequency-modulated qubit: line n sits at offset
// n*M from the bare transition with weight [J_n(D/M)]^2.
struct SidebandComb {
  struct Line {
    double offset = 0.0;  // n*M (rad/s)
    double weight = 0.0;  // dimensionless, >= 0
  };
  std::vector<Line> lines;  // n = -n_max .. n_max in order
  double drive_frequency = 0.0;  // M (rad/s)

  double total_weight() const;
  // weight of line n (0 if outside range)
  double weight(int n) const;
};

// Weights [J_n(D/M)]^2 for n in [-n_max, n_max]. Requires M > 0 and
// n_max >= ceil(D/M) + 20 so the neglected tail mass stays below 1e-10;
// throws std::invalid_argument otherwise.
SidebandComb sideband_comb(double amplitude, double drive_frequency, int n_max);

// Sum of unit-area Lorentzians of FWHM `linewidth` on the frequency grid
// (rad/s offsets). linewidth = 0 renders sticks: each line's weight is put
// on the nearest grid point as weight/grid_spacing so the integral over the
// grid still matches the comb.
std::vector<double> render_spectrum(const SidebandComb& comb, double linewidth,
                                    const std::vector<double>& grid);

// CSV with columns offset_hz, weight (offsets reported cyclic: rad/s / 2pi).
std::string comb_to_csv(const SidebandComb& comb);

}  // namespace acqsim
