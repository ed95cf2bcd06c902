#include "magnon/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace magnon {
namespace {

constexpr int kMaxOrder = 1000000;
// Crossover between the power series and the downward recurrence. Below this
// the alternating series loses at most ~e^x of headroom, which long double
// absorbs comfortably.
constexpr double kSeriesCutoff = 15.0;
// Above this the recurrence would need too many steps; switch to the Hankel
// asymptotic expansion (valid only when the order is small against sqrt(x)).
constexpr double kAsymptoticCutoff = 1.0e7;

// Alternating power series sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!) in long
// double. Requires n >= 0 and x > 0.
double series(int n, double x) {
  const long double half = 0.5L * static_cast<long double>(x);
  const long double log_first =
      static_cast<long double>(n) * logl(half) - lgammal(static_cast<long double>(n) + 1.0L);
  // The series total is bounded by first_term * e^{(x/2)^2 / 1}; if even that
  // underflows double, the result is a clean zero.
  if (log_first < -800.0L) {
    return 0.0;
  }
  long double term = expl(log_first);
  long double sum = term;
  const long double quarter_sq = half * half;
  for (int k = 1; k < 400; ++k) {
    term *= -quarter_sq /
            (static_cast<long double>(k) * (static_cast<long double>(n) + static_cast<long double>(k)));
    sum += term;
    if (fabsl(term) < 1e-22L * fabsl(sum) + 1e-330L) {
      break;
    }
  }
  return static_cast<double>(sum);
}

// Miller downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, started from a
// tiny seed well above max(n, x) and normalized with J_0 + 2 sum J_{2k} = 1.
// Requires n >= 0 and x > 0.
double miller(int n, double x) {
  int start = std::max(n, static_cast<int>(std::ceil(x)));
  start += static_cast<int>(7.0 * std::cbrt(static_cast<double>(start))) + 32;
  if (start % 2 != 0) {
    ++start;
  }
  const long double lx = static_cast<long double>(x);
  long double next = 0.0L;        // J_{k+1}
  long double current = 1e-300L;  // J_k (arbitrary seed, divided out below)
  long double norm = 0.0L;
  long double captured = 0.0L;
  bool have_capture = false;
  for (int k = start; k >= 1; --k) {
    if (k == n) {
      captured = current;
      have_capture = true;
    }
    if (k % 2 == 0) {
      norm += 2.0L * current;
    }
    const long double previous = (2.0L * static_cast<long double>(k) / lx) * current - next;
    next = current;
    current = previous;
    if (fabsl(current) > 1e280L) {
      const long double scale = 1.0L / fabsl(current);
      current *= scale;
      next *= scale;
      norm *= scale;
      if (have_capture) {
        captured *= scale;
      }
    }
  }
  if (n == 0) {
    captured = current;  // loop ended with current = J_0
  }
  norm += current;
  return static_cast<double>(captured / norm);
}

// Hankel expansion for x >> n^2: J_n(x) ~ sqrt(2/(pi x)) [P cos w - Q sin w],
// w = x - n pi/2 - pi/4. Used only far beyond the recurrence range.
double asymptotic(int n, double x) {
  const long double mu = 4.0L * static_cast<long double>(n) * static_cast<long double>(n);
  const long double inv8x = 1.0L / (8.0L * static_cast<long double>(x));
  const long double q1 = (mu - 1.0L) * inv8x;
  if (fabsl(q1) > 1e-3L) {
    throw std::invalid_argument(
        "bessel_j: argument too large for this order (asymptotic regime not reached)");
  }
  const long double p = 1.0L - (mu - 1.0L) * (mu - 9.0L) * inv8x * inv8x / 2.0L;
  const long double q = q1 - (mu - 1.0L) * (mu - 9.0L) * (mu - 25.0L) * inv8x * inv8x * inv8x / 6.0L;
  const long double pi_l = 3.14159265358979323846264338327950288L;
  const long double w =
      static_cast<long double>(x) - static_cast<long double>(n) * pi_l / 2.0L - pi_l / 4.0L;
  const long double amp = sqrtl(2.0L / (pi_l * static_cast<long double>(x)));
  return static_cast<double>(amp * (p * cosl(w) - q * sinl(w)));
}

}  // namespace

double bessel_j(int order, double argument) {
  if (!std::isfinite(argument)) {
    throw std::domain_error("bessel_j: non-finite argument");
  }
  if (order > kMaxOrder || order < -kMaxOrder) {
    throw std::invalid_argument("bessel_j: |order| exceeds 1e6");
  }
  // Reflection identities: J_{-n}(x) = (-1)^n J_n(x), J_n(-x) = (-1)^n J_n(x).
  int n = order;
  double x = argument;
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) {
      sign = -sign;
    }
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) {
      sign = -sign;
    }
  }
  if (x == 0.0) {
    return n == 0 ? 1.0 : 0.0;
  }
  if (x < kSeriesCutoff) {
    return sign * series(n, x);
  }
  if (x <= kAsymptoticCutoff) {
    return sign * miller(n, x);
  }
  return sign * asymptotic(n, x);
}

}  // namespace magnon
