#include <cstdlib>
#include <string>

#include "orbihear/error.hpp"
#include "orbihear/kernels.hpp"

namespace orbihear::kernels {

#if !defined(ORBIHEAR_HAVE_AVX2)
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(ORBIHEAR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa select() noexcept {
  if (const char* forced = std::getenv("ORBIHEAR_SIMD"); forced && std::string(forced) == "scalar") {
    return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::Scalar};
  if (cpu_has_avx2()) out.push_back(Isa::Avx2);
  return out;
}

Isa active_isa() noexcept {
  static const Isa isa = select();
  return isa;
}

const KernelTable& table(Isa isa) {
  if (isa == Isa::Avx2) {
    if (!cpu_has_avx2()) throw Error(ErrorCode::InvalidInput, "AVX2 kernels are not available on this machine");
    return *avx2_table();
  }
  return scalar_table();
}

const KernelTable& active() noexcept { return active_isa() == Isa::Avx2 ? *avx2_table() : scalar_table(); }

}  // namespace orbihear::kernels
