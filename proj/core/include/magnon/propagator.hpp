#pragma once

#include <complex>

#include <Eigen/Core>

#include "magnon/chain.hpp"
#include "magnon/state.hpp"

namespace magnon {

// One-magnon propagator table G[x_to][x_from](t) for a finite ring (or a
// composite kicked propagator built on top of it). Entries are stored with
// 0-based indices; the at() accessor is 1-based to match site labels.
struct Propagator {
  ChainSpec chain = ChainSpec::finite(3, 0.0);
  double time = 0.0;
  Eigen::MatrixXcd amplitudes;

  int size() const { return static_cast<int>(amplitudes.rows()); }
  // 1-based accessor with strict range validation (std::invalid_argument).
  std::complex<double> at(int x_to, int x_from) const;
};

// Finite-ring one-magnon amplitude
//   G^{x_to}_{x_from}(t) = (1/N) sum_{l=1..N} e^{i p d} e^{2 i t cos p},
// with p = 2 pi l / N and d = x_to - x_from. The amplitude depends only on
// d mod N, and site arguments are reduced accordingly (ring periodicity), so
// any integers are accepted. Throws std::invalid_argument for an infinite
// chain and std::domain_error for non-finite t.
std::complex<double> green_finite(const ChainSpec& chain, long long x_to, long long x_from,
                                  double t);

// Infinite-chain limit of the same amplitude: i^d * J_d(2t) with
// d = x_to - x_from. Throws std::domain_error for non-finite t.
std::complex<double> green_infinite(long long x_to, long long x_from, double t);

// Dispatches to green_finite or green_infinite based on the chain mode.
std::complex<double> green(const ChainSpec& chain, long long x_to, long long x_from, double t);

// Full N x N table of green_finite values (circulant by construction, so
// translation invariance is exact). Finite chains only.
Propagator propagator_matrix(const ChainSpec& chain, double t);

// Amplitude combination K^m(t) = alpha*G^m_1(t) + beta*G^m_r(t) used by the
// pair-entangled initial state. Throws std::invalid_argument if the state is
// unentangled or the sites are invalid.
std::complex<double> combined_k(const InitialState& state, const ChainSpec& chain, int m,
                                double t);

// Gap-dressed amplitude e^{-i * magnon_gap * t} * G^m_1(t): the one-magnon
// amplitude carrying the zero<->one-magnon relative phase, as it enters the
// sigma^x/sigma^y expectations and the coherent-gate echo.
std::complex<double> dressed_green(const ChainSpec& chain, int m, double t);

// Largest deviation of any column 2-norm from 1 (unitarity diagnostic).
double max_column_norm_deviation(const Propagator& propagator);

// Largest violation of ring translation invariance: max over entries of
// |G[x'][x] - G[(x'-x) mod N + 1][1]|.
double max_translation_invariance_deviation(const Propagator& propagator);

}  // namespace magnon
