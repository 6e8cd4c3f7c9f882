#pragma once

#include "acqsim/kernels.hpp"

namespace acqsim::kernels::detail {

// nullptr when this binary was built without AVX2 support.
const KernelOps* avx2_kernels_or_null();

// True when the running CPU can execute the AVX2+FMA table.
bool cpu_supports_avx2_fma();

}  // namespace acqsim::kernels::detail
