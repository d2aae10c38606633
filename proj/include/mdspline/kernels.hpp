#pragma once

// Batched Bernstein evaluation. A scalar reference kernel and SIMD variants
// with identical semantics; the active variant is chosen once at runtime from
// the CPU feature set and can be overridden (tests, benchmarking).

#include <span>
#include <string_view>

namespace mdspline::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view name(Isa isa);

/// Variants compiled into this binary and supported by the running CPU.
bool available(Isa isa);

/// Currently selected variant.
Isa active();

/// Force a variant; returns false (and changes nothing) if unavailable.
bool select(Isa isa);

/// out[p] = sum_h coeffs[h] B_{h,d}(u[p]) by de Casteljau, u in [0,1].
/// coeffs.size() = d+1 <= 32; out.size() == u.size().
void bernstein_eval(std::span<const double> coeffs, std::span<const double> u,
                    std::span<double> out);

// Direct entry points, used by the equivalence tests.
void bernstein_eval_scalar(std::span<const double> coeffs, std::span<const double> u,
                           std::span<double> out);
#if defined(__x86_64__) || defined(_M_X64)
void bernstein_eval_avx2(std::span<const double> coeffs, std::span<const double> u,
                         std::span<double> out);
#endif
#if defined(__aarch64__)
void bernstein_eval_neon(std::span<const double> coeffs, std::span<const double> u,
                         std::span<double> out);
#endif

}  // namespace mdspline::kernels
