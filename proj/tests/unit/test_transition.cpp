#include <doctest.h>

#include <cmath>
#include <random>

#include "mdspline/transition.hpp"
#include "support/oracles.hpp"

using namespace mdspline;
using namespace mdspline::testing;

TEST_CASE("endpoint orders of the running space") {
  const auto sp = validate_space(running_space());
  const auto p = extended_partitions(sp);
  // s_5 = s_6 = s_7 = x_2 with d_2 = 4; t_2 = x_2 alone with d_1 = 2.
  CHECK(endpoint_orders(sp, p, 5).ks == 1);
  CHECK(endpoint_orders(sp, p, 2).kt == 1);
  CHECK(endpoint_orders(sp, p, 1).ks == -1);
}

TEST_CASE("running space transitions") {
  const auto ts = solve_all(validate_space(running_space()));
  REQUIRE(ts.size() == 7);
  for (double x : {0.0, 2.0, 5.0, 7.0}) CHECK(ts.f(1).poly(x) == 1.0);
  for (double x : {0.0, 1.5, 3.0}) CHECK(ts.f(7).poly(x) == 0.0);
  CHECK(ts.f(7).poly(7.0) == 1.0);
  CHECK(ts.f(7).first_interval == 2);
  CHECK(ts.f(7).last_interval == 4);
}

TEST_CASE("Bezier interval transitions are tail sums of Bernstein polynomials") {
  const auto ts = solve_all(validate_space({0, 1, {}, {3}, {}, std::nullopt}));
  REQUIRE(ts.size() == 4);
  for (int i = 1; i <= 4; ++i) {
    const auto& c = ts.f(i).poly.piece(0).coeffs;
    for (int h = 0; h <= 3; ++h) CHECK(c[h] == (h >= i - 1 ? 1.0 : 0.0));
  }
}

TEST_CASE("random spaces: structure, signs and bounds") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 80; ++n) {
    const auto sp = validate_space(random_space(rng));
    const auto ts = solve_all(sp);
    const auto& p = ts.partitions();
    for (int i = 2; i <= ts.size(); ++i) {
      const auto& f = ts.f(i);
      INFO(describe(sp.raw()), " i=", i);
      CHECK(f.residual <= 1e-12);
      const auto& first = f.poly.piece(f.first_interval).coeffs;
      const auto& last = f.poly.piece(f.last_interval - 1).coeffs;
      for (int h = 0; h <= f.k_s; ++h) CHECK(first[h] == 0.0);
      for (int h = 0; h <= f.k_t; ++h) CHECK(last[last.size() - 1 - h] == 1.0);
      const auto signs = taylor_signs(f);
      CHECK(signs.at_start > 0);
      CHECK(signs.at_end > 0);
      for (int k = 0; k <= 100; ++k) {
        const double x = k == 100 ? sp.b() : sp.a() + (sp.b() - sp.a()) * k / 100.0;
        const double v = f.poly(x);
        CHECK(v >= -1e-12);
        CHECK(v <= 1 + 1e-12);
        if (x <= p.s(i)) CHECK(v == 0.0);
        if (x >= p.t(i - 1)) CHECK(v == 1.0);
        CHECK(std::abs(f.poly(x) + f.complement(x) - 1.0) <= 1e-13);
      }
    }
  }
}

TEST_CASE("identity connection matrices reproduce the parametric solve") {
  const auto par = solve_all(validate_space(gc_parametric_space()));
  const auto geo = solve_all(validate_space(gc_space(1, 0, 1)));
  REQUIRE(par.size() == geo.size());
  for (int i = 1; i <= par.size(); ++i)
    for (int k = 0; k <= 60; ++k) {
      const double x = 3.0 * k / 60;
      CHECK(std::abs(par.f(i).poly(x) - geo.f(i).poly(x)) <= 1e-12);
    }
}

TEST_CASE("connection matrices change the derivative relation at the join") {
  const double alpha = 1.5, beta = 0.25, gamma = 2.0;
  const auto sp = validate_space(gc_space(alpha, beta, gamma));
  const auto ts = solve_all(sp);
  const double x1 = sp.x(1);
  for (int i = 2; i <= ts.size(); ++i) {
    const auto& f = ts.f(i).poly;
    const double l1 = f.derivative_at(x1, 1, Side::left), l2 = f.derivative_at(x1, 2, Side::left);
    CHECK(f.eval(x1, Side::right) == doctest::Approx(f.eval(x1, Side::left)).epsilon(1e-12));
    CHECK(f.derivative_at(x1, 1, Side::right) == doctest::Approx(alpha * l1).epsilon(1e-10).scale(1));
    CHECK(f.derivative_at(x1, 2, Side::right) == doctest::Approx(beta * l1 + gamma * l2).epsilon(1e-10).scale(1));
  }
}

TEST_CASE("index errors") {
  const auto sp = validate_space(running_space());
  const auto p = extended_partitions(sp);
  CHECK_THROWS_AS(solve_transition(sp, p, 0), Error);
  CHECK_THROWS_AS(solve_transition(sp, p, 8), Error);
}
