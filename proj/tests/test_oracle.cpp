#include <cmath>

#include "doctest.h"
#include "henderson/oracle.hpp"

using namespace henderson;

namespace {

BoxSpec box(double L, int N_cap) {
  BoxSpec b;
  b.L = L;
  b.N_cap = N_cap;
  return b;
}

}  // namespace

TEST_CASE("box spec validation") {
  CHECK_NOTHROW(box(2.0, 3).validate());
  CHECK_THROWS(box(0.0, 3).validate());
  CHECK_THROWS(box(2.0, 6).validate());
  CHECK_THROWS(box(2.0, -1).validate());
}

TEST_CASE("partition function examples") {
  GridSpec g(4.0, 161);
  const double mu = std::log(0.1);
  auto ideal = ideal_gas(g, 1.0);
  CHECK(box_partition_function(ideal, mu, box(2.0, 0)) == 1.0);
  CHECK(box_partition_function(ideal, mu, box(2.0, 3)) ==
        doctest::Approx(1.0 + 0.2 + 0.02 + 0.008 / 6.0).epsilon(1e-13));
  CHECK(box_partition_function(ideal, mu, box(2.0, 3)) == doctest::Approx(1.221333).epsilon(1e-6));

  // Two unit rods in a box of length 2: int int 1{|x-y|>1} = (L - sigma)^2 = 1; three cannot fit.
  auto rod = hard_rod(g, 1.0, 1.0);
  CHECK(box_partition_function(rod, mu, box(2.0, 3)) == doctest::Approx(1.205).epsilon(1e-12));
  CHECK(box_partition_function(rod, mu, box(2.0, 5)) == doctest::Approx(1.205).epsilon(1e-12));
  // Three rods in L = 3.5: (L - 2 sigma)^3 / 3! ordered volume per permutation times 3! / 3!.
  double L = 3.5, z = 0.1;
  double xi = 1.0 + z * L + z * z * (L - 1.0) * (L - 1.0) / 2.0 + z * z * z * std::pow(L - 2.0, 3) / 6.0;
  CHECK(box_partition_function(rod, mu, box(L, 3)) == doctest::Approx(xi).epsilon(1e-12));
}

TEST_CASE("partition function is monotone in activity and box length") {
  GridSpec g(6.0, 241);
  auto p = lj_type(g, 1.0, 0.4, 1.0, 6.0);
  double prev = 1.0;
  for (double z : {0.01, 0.02, 0.05, 0.1}) {
    double xi = box_partition_function(p, std::log(z), box(6.0, 4));
    CHECK(xi > prev);
    prev = xi;
  }
  prev = 1.0;
  for (double L : {2.0, 4.0, 6.0, 8.0}) {
    double xi = box_partition_function(p, std::log(0.05), box(L, 4));
    CHECK(xi > prev);
    prev = xi;
  }
}

TEST_CASE("box correlation examples") {
  GridSpec g(4.0, 161);
  auto ideal = ideal_gas(g, 1.0);
  double rho = box_correlation(ideal, std::log(0.1), box(2.0, 3), {0.0});
  CHECK(rho == doctest::Approx(0.1 * (1.0 + 0.2 + 0.02) / 1.221333333333333).epsilon(1e-12));
  CHECK(rho == doctest::Approx(0.099891).epsilon(1e-5));
  double rho_big = box_correlation(ideal, std::log(0.1), box(2.0, 5), {0.3});
  CHECK(std::abs(rho_big - 0.1) < std::abs(rho - 0.1));

  auto rod = hard_rod(g, 1.0, 1.0);
  CHECK(box_correlation(rod, std::log(0.1), box(10.0, 4), {0.0, 0.7}) == 0.0);
  CHECK(box_correlation(rod, std::log(0.1), box(10.0, 4), {-0.2, 0.2, 1.5}) == 0.0);
  CHECK(box_correlation(rod, std::log(0.1), box(10.0, 4), {0.0, 1.5}) > 0.0);

  auto all = box_correlations(rod, std::log(0.05), box(8.0, 3), {-0.75, 0.75});
  REQUIRE(all.size() == 4);
  CHECK(all[1] == doctest::Approx(box_correlation(rod, std::log(0.05), box(8.0, 3), {-0.75})).epsilon(1e-14));
  CHECK(all[3] == doctest::Approx(box_correlation(rod, std::log(0.05), box(8.0, 3), {-0.75, 0.75})).epsilon(1e-14));
}

TEST_CASE("tail bound") {
  GridSpec g(4.0, 161);
  auto rod = hard_rod(g, 1.0, 1.0);
  double b = box_tail_bound(rod, std::log(0.1), box(10.0, 4), 0.0);
  CHECK(b == doctest::Approx(std::pow(1.0, 5) / 120.0).epsilon(1e-12));
  CHECK(box_tail_bound(rod, std::log(0.1), box(10.0, 4), 0.1) > b);
}

TEST_CASE("finite-difference checker") {
  auto lin = fd_check("linear", [](double t) { return 3.0 + 2.0 * t; }, 2.0, {1e-2, 1e-3, 1e-4});
  CHECK(lin.pass);
  for (double r : lin.remainder) CHECK(r < 1e-14);

  // df = 0 is the true derivative of t^2 at 0, so the remainder is t^2 itself.
  auto quad = fd_check("square", [](double t) { return t * t; }, 0.0, {1e-2, 1e-3, 1e-4});
  CHECK(quad.pass);
  CHECK(quad.slope == doctest::Approx(2.0).epsilon(1e-6));

  // Negative control: a wrong derivative leaves a first-order remainder.

  auto wrong = fd_check("wrong", [](double t) { return t * t + t; }, 0.0, {1e-2, 1e-3, 1e-4});
  CHECK_FALSE(wrong.pass);
  CHECK(wrong.slope == doctest::Approx(1.0).epsilon(1e-2));

  auto cubic = fd_check("cubic", [](double t) { return std::sin(t); }, 1.0, {1e-1, 5e-2, 2.5e-2}, 3.0);
  CHECK(cubic.pass);
  CHECK(cubic.slope == doctest::Approx(3.0).epsilon(1e-2));
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1.0, 2.0, 4.0}, {3.0, 12.0, 48.0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS(loglog_slope({1.0}, {1.0}));
}

TEST_CASE("Tonks hard-rod reference") {
  auto a = tonks_from_z(0.1);
  CHECK(a.beta_p == doctest::Approx(0.091277).epsilon(1e-5));
  CHECK(a.rho == doctest::Approx(0.083642).epsilon(1e-5));
  CHECK(a.beta_p * std::exp(a.beta_p) == doctest::Approx(0.1).epsilon(1e-15));
  auto b = tonks_from_rho(0.5);
  CHECK(b.beta_p == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.z == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  auto c = tonks_from_rho(1e-8);
  CHECK(c.beta_p == doctest::Approx(1e-8).epsilon(1e-7));
  auto round = tonks_from_rho(a.rho);
  CHECK(round.z == doctest::Approx(0.1).epsilon(1e-13));
  // Small-z series: beta p = z - z^2 + 3 z^3 / 2 - ...
  auto s = tonks_from_z(1e-3);
  CHECK(s.beta_p == doctest::Approx(1e-3 - 1e-6 + 1.5e-9).epsilon(1e-11));
  CHECK_THROWS(tonks_from_rho(1.0));
  CHECK_THROWS(tonks_from_rho(-0.1));
  CHECK_THROWS(tonks_from_z(0.0));
}
