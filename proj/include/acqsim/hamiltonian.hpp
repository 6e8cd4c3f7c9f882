#pragma once

#include "acqsim/operators.hpp"
#include "acqsim/system.hpp"

namespace acqsim {

// delta_i + D_i*cos(M t + phi_i), the rotating-frame modulated detuning of
// qubit `qubit_index` at time t (seconds).
double modulated_frequency(const SystemSpec& spec, const DriveParams& drive,
                           int qubit_index, double t);

// H = sum_i delta_i n_i - Delta a^dag a + g sum_i (sigma_i a^dag + sigma_i^dag a),
// hbar = 1 (every energy is an angular frequency).
OperatorMatrix h_static(const SystemSpec& spec, const SpaceLayout& layout);

// h_static with each qubit diagonal replaced by its modulated detuning at t.
OperatorMatrix h_at(const SystemSpec& spec, const DriveParams& drive,
                    const SpaceLayout& layout, double t);

}  // namespace acqsim
