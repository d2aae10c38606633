#include <doctest.h>

#include <random>
#include <vector>

#include "mdspline/bernstein.hpp"
#include "mdspline/kernels.hpp"

using namespace mdspline;
namespace k = mdspline::kernels;

namespace {

struct Batch {
  std::vector<double> coeffs, u;
};

std::vector<Batch> batches() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-10, 10), t(0, 1);
  std::vector<Batch> out;
  for (int d = 0; d <= 31; ++d)
    for (int len : {0, 1, 3, 4, 5, 8, 17, 64, 257}) {
      Batch b;
      b.coeffs.resize(d + 1);
      for (auto& v : b.coeffs) v = c(rng);
      b.u.resize(len);
      for (auto& v : b.u) v = t(rng);
      if (len > 2) {
        b.u[0] = 0.0;
        b.u[1] = 1.0;
      }
      out.push_back(std::move(b));
    }
  return out;
}

using Kernel = void (*)(std::span<const double>, std::span<const double>, std::span<double>);

void check_equal(Kernel kernel) {
  for (const auto& b : batches()) {
    std::vector<double> ref(b.u.size()), got(b.u.size());
    k::bernstein_eval_scalar(b.coeffs, b.u, ref);
    kernel(b.coeffs, b.u, got);
    for (std::size_t p = 0; p < ref.size(); ++p) REQUIRE(got[p] == ref[p]);
  }
}

}  // namespace

TEST_CASE("scalar kernel matches de Casteljau") {
  for (const auto& b : batches()) {
    std::vector<double> out(b.u.size());
    k::bernstein_eval_scalar(b.coeffs, b.u, out);
    for (std::size_t p = 0; p < out.size(); ++p) CHECK(out[p] == de_casteljau(b.coeffs, b.u[p]));
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernel is bitwise equal to scalar") {
  if (!k::available(k::Isa::avx2)) {
    MESSAGE("avx2 not available on this CPU");
    return;
  }
  check_equal(&k::bernstein_eval_avx2);
}
#endif

#if defined(__aarch64__)
TEST_CASE("neon kernel is bitwise equal to scalar") {
  REQUIRE(k::available(k::Isa::neon));
  check_equal(&k::bernstein_eval_neon);
}
#endif

TEST_CASE("dispatch selection") {
  const auto initial = k::active();
  CHECK(k::available(k::Isa::scalar));
  CHECK(k::available(initial));
  CHECK(k::select(k::Isa::scalar));
  CHECK(k::active() == k::Isa::scalar);
  check_equal(&k::bernstein_eval);
  for (auto isa : {k::Isa::avx2, k::Isa::neon}) {
    if (k::available(isa)) {
      CHECK(k::select(isa));
      CHECK(k::active() == isa);
      check_equal(&k::bernstein_eval);
    } else {
      CHECK_FALSE(k::select(isa));
    }
  }
  CHECK(k::select(initial));
  CHECK(k::name(k::Isa::scalar) == "scalar");
}
