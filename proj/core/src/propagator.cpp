#include "magnon/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "magnon/bessel.hpp"

namespace magnon {
namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

void require_finite_time(double t) {
  if (!std::isfinite(t)) {
    throw std::domain_error("propagator: time must be a finite real");
  }
}

// Plane-wave sum for one reduced site difference d in [0, N); long-double
// accumulation keeps the O(N) sum accurate enough for the 1e-10 unitarity
// and 1e-9 composition budgets at N up to a few thousand.
std::complex<double> plane_wave_sum(int num_sites, long long reduced_distance, double t) {
  const long double step = 2.0L * kPi / static_cast<long double>(num_sites);
  const long double lt = static_cast<long double>(t);
  const long double ld = static_cast<long double>(reduced_distance);
  long double sum_re = 0.0L;
  long double sum_im = 0.0L;
  for (int l = 1; l <= num_sites; ++l) {
    const long double p = step * static_cast<long double>(l);
    const long double angle = p * ld + 2.0L * lt * cosl(p);
    sum_re += cosl(angle);
    sum_im += sinl(angle);
  }
  return {static_cast<double>(sum_re / num_sites), static_cast<double>(sum_im / num_sites)};
}

}  // namespace

std::complex<double> Propagator::at(int x_to, int x_from) const {
  const int n = size();
  if (x_to < 1 || x_to > n || x_from < 1 || x_from > n) {
    throw std::invalid_argument("Propagator::at: site index out of range 1..N");
  }
  return amplitudes(x_to - 1, x_from - 1);
}

std::complex<double> green_finite(const ChainSpec& chain, long long x_to, long long x_from,
                                  double t) {
  if (!chain.is_finite()) {
    throw std::invalid_argument("green_finite: requires a finite chain");
  }
  require_finite_time(t);
  const int n = chain.num_sites();
  long long d = (x_to - x_from) % n;
  if (d < 0) {
    d += n;
  }
  return plane_wave_sum(n, d, t);
}

std::complex<double> green_infinite(long long x_to, long long x_from, double t) {
  require_finite_time(t);
  const long long d = x_to - x_from;
  if (d > 1000000 || d < -1000000) {
    throw std::invalid_argument("green_infinite: site separation too large");
  }
  const double j = bessel_j(static_cast<int>(d), 2.0 * t);
  // i^d cycles through {1, i, -1, -i}.
  switch (((d % 4) + 4) % 4) {
    case 0:
      return {j, 0.0};
    case 1:
      return {0.0, j};
    case 2:
      return {-j, 0.0};
    default:
      return {0.0, -j};
  }
}

std::complex<double> green(const ChainSpec& chain, long long x_to, long long x_from, double t) {
  return chain.is_finite() ? green_finite(chain, x_to, x_from, t)
                           : green_infinite(x_to, x_from, t);
}

Propagator propagator_matrix(const ChainSpec& chain, double t) {
  if (!chain.is_finite()) {
    throw std::invalid_argument("propagator_matrix: requires a finite chain");
  }
  require_finite_time(t);
  const int n = chain.num_sites();
  std::vector<std::complex<double>> column(n);
  for (int d = 0; d < n; ++d) {
    column[d] = plane_wave_sum(n, d, t);
  }
  Propagator result{chain, t, Eigen::MatrixXcd(n, n)};
  for (int from = 0; from < n; ++from) {
    for (int to = 0; to < n; ++to) {
      int d = to - from;
      if (d < 0) {
        d += n;
      }
      result.amplitudes(to, from) = column[d];
    }
  }
  return result;
}

std::complex<double> combined_k(const InitialState& state, const ChainSpec& chain, int m,
                                double t) {
  if (!state.is_entangled()) {
    throw std::invalid_argument("combined_k: requires the entangled state variant");
  }
  state.require_compatible(chain);
  chain.require_site(m);
  return state.alpha() * green(chain, m, 1, t) +
         state.beta() * green(chain, m, state.partner_site(), t);
}

std::complex<double> dressed_green(const ChainSpec& chain, int m, double t) {
  chain.require_site(m);
  const std::complex<double> phase = std::polar(1.0, -chain.magnon_gap() * t);
  return phase * green(chain, m, 1, t);
}

double max_column_norm_deviation(const Propagator& propagator) {
  double worst = 0.0;
  for (int c = 0; c < propagator.size(); ++c) {
    worst = std::max(worst, std::abs(propagator.amplitudes.col(c).norm() - 1.0));
  }
  return worst;
}

double max_translation_invariance_deviation(const Propagator& propagator) {
  const int n = propagator.size();
  double worst = 0.0;
  for (int from = 0; from < n; ++from) {
    for (int to = 0; to < n; ++to) {
      int d = to - from;
      if (d < 0) {
        d += n;
      }
      worst = std::max(worst,
                       std::abs(propagator.amplitudes(to, from) - propagator.amplitudes(d, 0)));
    }
  }
  return worst;
}

}  // namespace magnon
