#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include <magnon/bessel.hpp>

namespace {

// Independent reference: the alternating power series
//   J_n(x) = sum_k (-1)^k / (k! (n+k)!) (x/2)^{n+2k},
// summed in extended precision. Converges quickly for the small arguments
// used here; written without any code shared with the implementation.
double series_reference(int order, double x) {
  const int n = std::abs(order);
  const long double half = static_cast<long double>(x) / 2.0L;
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) {
    term *= half / static_cast<long double>(k);
  }
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -half * half / (static_cast<long double>(k) * static_cast<long double>(n + k));
    sum += term;
    if (std::abs(static_cast<double>(term)) < 1e-24 * (1.0 + std::abs(static_cast<double>(sum)))) {
      break;
    }
  }
  double value = static_cast<double>(sum);
  if (order < 0 && n % 2 == 1) {
    value = -value;
  }
  return value;
}

}  // namespace

TEST_CASE("matches the power series for small and moderate arguments") {
  for (int order = 0; order <= 12; ++order) {
    for (double x : {0.0, 1e-8, 0.1, 0.5, 1.0, 2.0, 3.7, 5.0, 8.0, 12.0}) {
      const double expected = series_reference(order, x);
      const double actual = magnon::bessel_j(order, x);
      CAPTURE(order);
      CAPTURE(x);
      CHECK(std::abs(actual - expected) <= 1e-14 + 1e-13 * std::abs(expected));
    }
  }
}

TEST_CASE("frozen reference values") {
  CHECK(magnon::bessel_j(0, 0.0) == 1.0);
  CHECK(magnon::bessel_j(3, 0.0) == 0.0);
  CHECK(magnon::bessel_j(0, 2.0) == doctest::Approx(0.22389077914123567).epsilon(1e-13));
  CHECK(magnon::bessel_j(1, 1.0) == doctest::Approx(0.44005058574493355).epsilon(1e-13));
  CHECK(magnon::bessel_j(5, 20.0) == doctest::Approx(0.15116976798239493).epsilon(1e-12));
}

TEST_CASE("order and argument reflection identities") {
  for (int order : {0, 1, 2, 5, 9}) {
    for (double x : {0.3, 1.7, 6.0, 21.5}) {
      const double plus = magnon::bessel_j(order, x);
      const double sign = order % 2 == 0 ? 1.0 : -1.0;
      CHECK(magnon::bessel_j(-order, x) == doctest::Approx(sign * plus).epsilon(1e-13));
      CHECK(magnon::bessel_j(order, -x) == doctest::Approx(sign * plus).epsilon(1e-13));
    }
  }
}

TEST_CASE("three-term recurrence holds across evaluation regimes") {
  // J_{n-1}(x) + J_{n+1}(x) = (2n/x) J_n(x); exercises the series, Miller,
  // and asymptotic branches.
  for (double x : {0.5, 4.0, 14.9, 15.1, 80.0, 1000.0, 5e6, 2e7}) {
    for (int order : {1, 2, 4, 7}) {
      const double lhs = magnon::bessel_j(order - 1, x) + magnon::bessel_j(order + 1, x);
      const double rhs = 2.0 * order / x * magnon::bessel_j(order, x);
      CAPTURE(x);
      CAPTURE(order);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("normalization sum rule") {
  // J_0(x)^2 + 2 sum_{m>=1} J_m(x)^2 = 1.
  for (double x : {0.8, 7.3, 30.0}) {
    double sum = magnon::bessel_j(0, x) * magnon::bessel_j(0, x);
    for (int m = 1; m <= static_cast<int>(x) + 40; ++m) {
      const double jm = magnon::bessel_j(m, x);
      sum += 2.0 * jm * jm;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("agrees loosely with the standard library implementation") {
  for (int order = 0; order <= 8; ++order) {
    for (double x = 0.25; x <= 30.0; x += 1.25) {
      const double expected = std::cyl_bessel_j(static_cast<double>(order), x);
      CHECK(magnon::bessel_j(order, x) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("rejects unsupported arguments") {
  CHECK_THROWS_AS(magnon::bessel_j(0, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(magnon::bessel_j(0, std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(magnon::bessel_j(2000000, 1.0), std::invalid_argument);
}
