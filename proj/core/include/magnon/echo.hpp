#pragma once

#include <complex>
#include <vector>

#include "magnon/chain.hpp"
#include "magnon/channels.hpp"
#include "magnon/errors.hpp"
#include "magnon/series.hpp"
#include "magnon/state.hpp"

namespace magnon {

// Expectation value <sigma^z_m> in the evolved state at time t0:
//   unentangled: 1 - 2|beta|^2 |G^m_1(t0)|^2
//   entangled:   1 - 2|K^m(t0)|^2
double expect_sigma_z(const InitialState& state, const ChainSpec& chain, int m, double t0);

// Expectation value <sigma^x_m> at time t0:
//   unentangled: 2 Re(conj(alpha) * beta * dressed_green(m, t0))
//   entangled:   exactly 0 (the magnon-number superposition is absent)
double expect_sigma_x(const InitialState& state, const ChainSpec& chain, int m, double t0);

// Loschmidt echo of a single incoherent event: L = sum_i |<Psi(t0)|E_i|Psi(t0)>|^2,
// evaluated by decomposing each Kraus operator over {1, sigma^z, sigma^x,
// sigma^y} at the event site. Throws std::invalid_argument if the event does
// not carry a Kraus channel, and unsupported_analytically if a sigma^y
// component meets the entangled state (no closed form; use the oracle).
double echo_incoherent(const InitialState& state, const ChainSpec& chain, const QdpEvent& event);

// Loschmidt echo of a single coherent gate at site m and time t0:
// L = |A|^2 with
//   unentangled: A = gamma - 2i*Im(gamma)*|beta*G^m_1(t0)|^2
//                    + 2i*Im(alpha*conj(beta)*delta*conj(dressed_green(m,t0)))
//   entangled:   A = gamma - 2i*Im(gamma)*|K^m(t0)|^2
double echo_coherent(const InitialState& state, const ChainSpec& chain, int m, double t0,
                     const CoherentGate& gate);

// Echo after each of n equally spaced sigma^z-diagonal channel events
// (phase flip, projective z, or a custom channel with no sigma^x/sigma^y
// component), computed exactly by evolving the zero-plus-one-magnon sector
// density matrix. Finite chains only. Returns the curve L(n), n = 1..len.
// Throws unsupported_analytically for channels that leave the sector and for
// coherent sequences (use the oracle).
EchoSeries echo_multi_exact_z(const InitialState& state, const ChainSpec& chain,
                              const QdpSequence& sequence);

// Expectation value of the time-ordered string
//   <Psi| U(dt_n)^dag ... sigma^z_{m_2} U(dt_2) sigma^z_{m_1} U(dt_1) |Psi>
// (one sigma^z per listed site, intervals[j] elapsing before insertion j),
// keeping only terms with at most `order` one-magnon amplitude factors.
// order >= n+1 reproduces the exact sector value. Throws
// std::invalid_argument for order < 2 or mismatched site/interval lists.
std::complex<double> string_amplitude_truncated(const ChainSpec& chain, const InitialState& state,
                                                const std::vector<int>& sites,
                                                const std::vector<double>& intervals, int order);

// Echo after each of n equally spaced events of a phase-flip(p) or
// projective-z (p = 1/2) channel, assembled as the probability-weighted sum
// of squared truncated string amplitudes:
//   L(n) = sum_{S subset of events} p^{n-|S|} (1-p)^{|S|} |A_S(order)|^2.
// Converges to echo_multi_exact_z as `order` grows; equal at order >= n+1.
// Limits: at most 16 events (the assembly enumerates 2^n strings).
EchoSeries echo_multi_truncated(const InitialState& state, const ChainSpec& chain,
                                const QdpSequence& sequence, int order);

// Saturation value |gamma|^(2n) of the echo after n well-separated coherent
// gates. n >= 0.
double coherent_asymptote(const CoherentGate& gate, int num_gates);

}  // namespace magnon
