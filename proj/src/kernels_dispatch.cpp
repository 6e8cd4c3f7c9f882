#include <cstdlib>
#include <string>

#include "acqsim/kernels.hpp"
#include "kernels_detail.hpp"

namespace acqsim::kernels {

std::vector<const KernelOps*> available_kernels() {
  std::vector<const KernelOps*> out{&scalar_kernels()};
  if (const KernelOps* avx2 = detail::avx2_kernels_or_null();
      avx2 != nullptr && detail::cpu_supports_avx2_fma()) {
    out.push_back(avx2);
  }
  return out;
}

namespace {

const KernelOps& select_kernels() {
  const auto tables = available_kernels();
  if (const char* env = std::getenv("ACQSIM_KERNELS")) {
    const std::string want(env);
    for (const KernelOps* t : tables) {
      if (want == t->name) return *t;
    }
    // Unknown or unsupported name: fall through to the default choice.
  }
  return *tables.back();  // widest supported variant
}

}  // namespace

const KernelOps& active_kernels() {
  static const KernelOps& selected = select_kernels();
  return selected;
}

}  // namespace acqsim::kernels
