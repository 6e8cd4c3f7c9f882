#pragma once

#include <string>

namespace acqsim {

enum class RateConvention { angular, cyclic };

// Material response to strain. The deformation potential is stored angular
// (rad/s per unit strain); the constructor tag disambiguates inputs quoted
// as "PHz/strain", which differ by 2*pi between conventions.
struct MaterialParams {
  double deformation_potential = 0.0;  // rad/s per strain, > 0
  double sound_speed = 0.0;            // m/s, > 0

  static MaterialParams make(double deformation_potential, RateConvention convention,
                             double sound_speed);
};

// Acoustic plane-wave parameters that realize a target D/M modulation ratio.
struct AcousticRequirement {
  double wavenumber = 0.0;              // k_m = M/c_m (rad/m)
  double wavelength = 0.0;              // lambda_m = 2*pi/k_m (m)
  double displacement_amplitude = 0.0;  // A_0 (m)
  double strain_amplitude = 0.0;        // eps = k_m * A_0
  double modulation_amplitude = 0.0;    // D = eps * deformation potential (rad/s)
};

// k_m = M/c_m; eps = ratio*M/deformation_potential; A_0 = eps/k_m.
AcousticRequirement acoustic_wave_requirements(const MaterialParams& material,
                                               double drive_frequency, double target_ratio);

// Human-readable report. Prints the wavenumber in both angular (rad/m) and
// cyclic (1/m) conventions since the literature mixes them.
std::string drive_design_report(const MaterialParams& material, double drive_frequency,
                                double target_ratio, const AcousticRequirement& req);

}  // namespace acqsim
