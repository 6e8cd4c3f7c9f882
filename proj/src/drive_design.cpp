#include "acqsim/drive_design.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "acqsim/units.hpp"

namespace acqsim {

MaterialParams MaterialParams::make(double deformation_potential, RateConvention convention,
                                    double sound_speed) {
  if (!(deformation_potential > 0.0))
    throw std::invalid_argument("MaterialParams: deformation potential must be > 0");
  if (!(sound_speed > 0.0)) throw std::invalid_argument("MaterialParams: sound speed must be > 0");
  MaterialParams m;
  m.deformation_potential = convention == RateConvention::cyclic
                                ? angular_from_hz(deformation_potential)
                                : deformation_potential;
  m.sound_speed = sound_speed;
  return m;
}

AcousticRequirement acoustic_wave_requirements(const MaterialParams& material,
                                               double drive_frequency, double target_ratio) {
  if (!(drive_frequency > 0.0))
    throw std::invalid_argument("acoustic_wave_requirements: drive frequency must be > 0");
  if (!(target_ratio > 0.0))
    throw std::invalid_argument("acoustic_wave_requirements: target ratio must be > 0");

  AcousticRequirement req;
  req.wavenumber = drive_frequency / material.sound_speed;
  req.wavelength = two_pi / req.wavenumber;
  req.strain_amplitude = target_ratio * drive_frequency / material.deformation_potential;
  req.displacement_amplitude = req.strain_amplitude / req.wavenumber;
  req.modulation_amplitude = req.strain_amplitude * material.deformation_potential;
  return req;
}

std::string drive_design_report(const MaterialParams& material, double drive_frequency,
                                double target_ratio, const AcousticRequirement& req) {
  std::ostringstream out;
  out.precision(4);
  out << "acoustic drive design\n"
      << "  drive frequency M        : " << ghz_from_angular(drive_frequency) << " GHz\n"
      << "  target modulation D/M    : " << target_ratio << "\n"
      << "  material sound speed     : " << material.sound_speed << " m/s\n"
      << "  deformation potential    : " << material.deformation_potential << " rad/s per strain ("
      << hz_from_angular(material.deformation_potential) * 1e-15 << " PHz cyclic)\n"
      << "  wavenumber k_m = M/c_m   : " << req.wavenumber << " rad/m ("
      << req.wavenumber / two_pi << " cycles/m)\n"
      << "  wavelength lambda_m      : " << req.wavelength * 1e6 << " um\n"
      << "  strain amplitude eps     : " << req.strain_amplitude << "\n"
      << "  displacement A_0         : " << req.displacement_amplitude * 1e12 << " pm\n"
      << "  modulation amplitude D   : " << ghz_from_angular(req.modulation_amplitude) << " GHz\n";
  const double lam = req.wavelength;
  if (lam < 0.1e-6 || lam > 100e-6) {
    out << "  warning: wavelength outside the 0.1-100 um range typical of GHz drives in solids\n";
  }
  return out.str();
}

}  // namespace acqsim
