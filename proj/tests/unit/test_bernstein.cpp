#include <doctest.h>

#include <cmath>
#include <random>

#include "mdspline/bernstein.hpp"
#include "mdspline/error.hpp"
#include "mdspline/piecewise.hpp"

using namespace mdspline;
using doctest::Approx;

namespace {

BernsteinPiece random_piece(std::mt19937_64& rng, int max_degree = 8) {
  std::uniform_real_distribution<double> u(-2, 2), w(0.2, 3);
  const int d = std::uniform_int_distribution<int>(0, max_degree)(rng);
  BernsteinPiece p;
  p.lo = u(rng);
  p.hi = p.lo + w(rng);
  p.coeffs.resize(d + 1);
  for (auto& c : p.coeffs) c = u(rng);
  return p;
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(eval({0, 1, {0, 0, 1}}, 1.0) == 1.0);
  CHECK(eval({0, 1, {0, 1, 0}}, 0.5) == Approx(0.5).epsilon(1e-15));
  for (double x : {0.0, 0.3, 0.77, 1.0}) CHECK(eval({0, 1, {1, 1, 1, 1}}, x) == Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(eval({0, 1, {1, 1}}, 1.5), Error);
}

TEST_CASE("derivative") {
  const auto d1 = derivative({0, 2, {0, 1}});
  CHECK(d1.coeffs == std::vector<double>{0.5});
  CHECK(derivative({0, 1, {0, 0, 1}}).coeffs == std::vector<double>{0, 2});
  const auto dz = derivative(BernsteinPiece::constant(0, 1, 0, 3.0));
  CHECK(dz.degree() == 0);
  CHECK(dz.coeffs[0] == 0.0);
}

TEST_CASE("antiderivative and integral") {
  CHECK(antiderivative({0, 1, {1, 1}}, 0).coeffs == std::vector<double>{0, 0.5, 1});
  CHECK(integral({0, 1, {1, 0, 0}}) == Approx(1.0 / 3).epsilon(1e-15));
  const auto z = antiderivative({0, 1, {0, 0}}, 2.5);
  for (double c : z.coeffs) CHECK(c == 2.5);
}

TEST_CASE("endpoint derivatives") {
  CHECK(endpoint_derivative({0, 1, {0, 0, 1}}, Side::left, 2) == Approx(2.0));
  CHECK(endpoint_derivative({0, 2, {0, 1, 1}}, Side::right, 1) == 0.0);
  CHECK(endpoint_derivative({0, 2, {0.25, 1, 1}}, Side::left, 0) == 0.25);
  CHECK_THROWS_AS(endpoint_derivative_weights(2, 1.0, Side::left, 3), Error);
}

TEST_CASE("elevation") {
  CHECK(elevate_once({0, 1, {0, 1}}).coeffs == std::vector<double>{0, 0.5, 1});
  CHECK(elevate_to({0, 1, {2}}, 4).coeffs == std::vector<double>(5, 2.0));
}

TEST_CASE("random pieces: identities") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0, 1);
  for (int n = 0; n < 200; ++n) {
    const auto p = random_piece(rng);
    const auto back = derivative(antiderivative(p, 0.7));
    REQUIRE(back.degree() == p.degree());
    for (int h = 0; h <= p.degree(); ++h)
      CHECK(std::abs(back.coeffs[h] - p.coeffs[h]) <= 1e-13 * std::max(1.0, std::abs(p.coeffs[h])));

    const auto e = elevate_once(p);
    for (int k = 0; k < 100; ++k) {
      const double x = p.lo + u01(rng) * p.width();
      CHECK(std::abs(eval(e, x) - eval(p, x)) <= 1e-13);
    }

    const double step = 1e-5 * p.width();
    for (Side side : {Side::left, Side::right}) {
      const double at = side == Side::left ? p.lo : p.hi;
      const double sgn = side == Side::left ? 1.0 : -1.0;
      const double fd =
          sgn * (-3 * eval(p, at) + 4 * eval(p, at + sgn * step) - eval(p, at + sgn * 2 * step)) / (2 * step);
      const double d = endpoint_derivative(p, side, std::min(1, p.degree()));
      if (p.degree() >= 1) CHECK(std::abs(d - fd) <= 1e-6 * std::max(1.0, std::abs(d)));
    }

    const auto ip = antiderivative(p, 0.0);
    CHECK(eval(ip, p.hi) == Approx(integral(p)).epsilon(1e-13));
  }
}

TEST_CASE("piecewise polynomial one-sided evaluation") {
  PiecewisePoly f({{0, 1, {0, 1}}, {1, 2, {3, 3}}});
  CHECK(f(1.0) == 3.0);
  CHECK(f.eval(1.0, Side::left) == 1.0);
  CHECK(f.eval(1.0, Side::right) == 3.0);
  CHECK(f.derivative_at(1.0, 1, Side::left) == 1.0);
  CHECK(f.derivative_at(1.0, 1, Side::right) == 0.0);
  CHECK(f.integral() == Approx(3.5));
  const std::vector<double> xs{0, 0.5, 1, 1.5, 2};
  const auto ys = f.sample(xs);
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(ys[k] == f(xs[k]));
}
