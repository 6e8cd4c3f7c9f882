#include "acqsim/system.hpp"

#include <cmath>
#include <stdexcept>

namespace acqsim {

void SystemSpec::validate() const {
  const std::size_t n = qubit_detunings.size();
  if (n < 1) throw std::invalid_argument("SystemSpec: at least one qubit required");
  if (qubit_decay.size() != n)
    throw std::invalid_argument("SystemSpec: qubit_decay length != qubit count");
  if (qubit_dephasing.size() != n)
    throw std::invalid_argument("SystemSpec: qubit_dephasing length != qubit count");
  if (coupling_g < 0.0) throw std::invalid_argument("SystemSpec: coupling_g < 0");
  if (cavity_decay < 0.0) throw std::invalid_argument("SystemSpec: cavity_decay < 0");
  for (double r : qubit_decay)
    if (r < 0.0) throw std::invalid_argument("SystemSpec: negative qubit decay rate");
  for (double r : qubit_dephasing)
    if (r < 0.0) throw std::invalid_argument("SystemSpec: negative dephasing rate");
  if (fock_truncation < 1) throw std::invalid_argument("SystemSpec: fock_truncation < 1");
}

bool SystemSpec::in_dispersive_regime() const {
  if (coupling_g == 0.0) return true;
  for (double delta_i : qubit_detunings) {
    const double di = std::abs(cavity_detuning + delta_i);
    if (di == 0.0 || coupling_g / di >= 0.1) return false;
  }
  return true;
}

void DriveParams::validate(int qubit_count) const {
  if (static_cast<int>(amplitudes.size()) != qubit_count)
    throw std::invalid_argument("DriveParams: amplitudes length != qubit count");
  if (static_cast<int>(phases.size()) != qubit_count)
    throw std::invalid_argument("DriveParams: phases length != qubit count");
  bool any = false;
  for (double d : amplitudes) {
    if (d < 0.0) throw std::invalid_argument("DriveParams: negative amplitude");
    any = any || d > 0.0;
  }
  if (any && frequency <= 0.0)
    throw std::invalid_argument("DriveParams: drive frequency must be > 0 when driven");
  if (frequency < 0.0) throw std::invalid_argument("DriveParams: negative drive frequency");
}

bool DriveParams::is_off() const {
  for (double d : amplitudes)
    if (d > 0.0) return false;
  return true;
}

int SpaceLayout::occupation(int subsystem, int basis_state) const {
  int divisor = 1;
  for (int k = subsystem_count() - 1; k > subsystem; --k) divisor *= dims[k];
  return (basis_state / divisor) % dims[subsystem];
}

int SpaceLayout::basis_index(const std::vector<int>& levels) const {
  if (levels.size() != dims.size())
    throw std::invalid_argument("basis_index: wrong number of levels");
  int idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (levels[k] < 0 || levels[k] >= dims[k])
      throw std::invalid_argument("basis_index: level out of range");
    idx = idx * dims[k] + levels[k];
  }
  return idx;
}

SpaceLayout build_space(const SystemSpec& spec) {
  spec.validate();
  SpaceLayout layout;
  layout.dims.assign(spec.qubit_count(), 2);
  layout.dims.push_back(spec.fock_truncation + 1);
  layout.has_cavity = true;
  layout.total_dim = 1;
  for (int d : layout.dims) layout.total_dim *= d;
  return layout;
}

}  // namespace acqsim
