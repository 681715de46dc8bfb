#include <cstdlib>
#include <string>

#include "solenoid_lab/error.hpp"
#include "solenoid_lab/kernels.hpp"

namespace solenoid_lab::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

constexpr KernelTable scalar_table{Isa::Scalar, &scalar::iterate, &scalar::box_keys};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable avx2_table{Isa::Avx2, &avx2::iterate, &avx2::box_keys};
#endif
#if defined(__aarch64__)
constexpr KernelTable neon_table{Isa::Neon, &neon::iterate, &neon::box_keys};
#endif

const KernelTable& choose() {
  if (const char* forced = std::getenv("SOLENOID_LAB_KERNEL"); forced && *forced) {
    std::string name(forced);
    for (Isa isa : available_isas())
      if (to_string(isa) == name) return table_for(isa);
    throw LabError(ErrorCode::InvalidArgument,
                   "SOLENOID_LAB_KERNEL=" + name + " is not available on this CPU");
  }
  return table_for(available_isas().back());
}

}  // namespace

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (cpu_supports(isa)) out.push_back(isa);
  return out;
}

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa))
    throw LabError(ErrorCode::InvalidArgument, std::string(to_string(isa)) + " kernels unavailable");
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2_table;
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon_table;
#endif
    default: return scalar_table;
  }
}

const KernelTable& active() {
  static const KernelTable& table = choose();
  return table;
}

}  // namespace solenoid_lab::kernels
