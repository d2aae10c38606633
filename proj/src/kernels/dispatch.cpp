#include <atomic>

#include "mdspline/error.hpp"
#include "mdspline/kernels.hpp"

namespace mdspline::kernels {
namespace {

Isa detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
#if defined(__aarch64__)
  return Isa::neon;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active() { return selected().load(std::memory_order_relaxed); }

bool select(Isa isa) {
  if (!available(isa)) return false;
  selected().store(isa, std::memory_order_relaxed);
  return true;
}

void bernstein_eval(std::span<const double> coeffs, std::span<const double> u,
                    std::span<double> out) {
  if (coeffs.empty() || coeffs.size() > 32)
    fail(ErrorKind::precondition, "bernstein_eval supports degrees 0..31");
  if (out.size() != u.size())
    fail(ErrorKind::precondition, "bernstein_eval output size mismatch");
  switch (active()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: return bernstein_eval_avx2(coeffs, u, out);
#endif
#if defined(__aarch64__)
    case Isa::neon: return bernstein_eval_neon(coeffs, u, out);
#endif
    default: return bernstein_eval_scalar(coeffs, u, out);
  }
}

}  // namespace mdspline::kernels
