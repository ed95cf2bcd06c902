#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "magnon/channels.hpp"
#include "magnon/chain.hpp"
#include "magnon/propagator.hpp"
#include "magnon/series.hpp"
#include "magnon/state.hpp"

namespace magnon {

// Parameters of the periodically kicked ring: kick strength g >= 0, kick
// period tau > 0, integer flux eta (1 <= eta <= N-1; integer flux makes the
// global kick phase exactly 1), and the site count N >= 3. The free flight
// between kicks is the isotropic-coupling ring with zero anisotropy.
struct HarperParams {
  double g = 1.0;
  double tau = 0.1;
  int eta = 1;
  int size = 10;
};

// Validates the parameter ranges above; throws std::invalid_argument.
void require_valid(const HarperParams& params);

// The free-flight chain of the kicked model (zero anisotropy, zero gap).
ChainSpec flight_chain(const HarperParams& params);

// Per-site kick factors e^{2 i tau g cos(2 pi eta x / N)}, x = 1..N
// (entry x-1 of the returned list). All unit modulus.
std::vector<std::complex<double>> kick_phases(const HarperParams& params);

// One-period composite propagator: free flight over tau followed by the kick
// phase at the arrival site, i.e. diag(kick_phases) * G_flight(tau).
Propagator harper_step(const HarperParams& params);

// n-fold product of harper_step (identity at n = 0): the composite amplitude
// table after n kicks, spanning time t = n*tau.
Propagator harper_green(const HarperParams& params, int kicks);

// Column `from` of harper_green(params, kicks), built by repeated
// matrix-vector steps in O(kicks * N^2).
Eigen::VectorXcd harper_column(const HarperParams& params, int kicks, int from = 1);

// Echo between kicked evolution and free-flight evolution of the same
// unentangled initial state, after n kicks. With
//   S(n) = sum_x Gk^x_1(n tau) * conj(Gf^x_1(n tau))
// (Gk kicked, Gf free), the fixed-state value is ||alpha|^2 + |beta|^2 S|^2;
// the averaged variant returns the closed-form mean over |alpha|^2 uniform
// on [0, 1]: (1 + Re S + |S|^2) / 3. Entangled states are rejected.
double echo_xy_vs_harper(const InitialState& state, const HarperParams& params, int kicks,
                         bool averaged);
// Same quantity sampled after each kick count in `kick_counts`
// (strictly increasing, >= 0); axis is elapsed time t = n*tau.
EchoSeries echo_xy_vs_harper_series(const InitialState& state, const HarperParams& params,
                                    const std::vector<int>& kick_counts, bool averaged);

// Echo of a single Kraus event at site m after n0 kicks of the kicked
// evolution, via the same Pauli-decomposition form as echo_incoherent with
// the composite amplitudes in place of the ring ones.
double echo_harper_qdp(const InitialState& state, const HarperParams& params,
                       const KrausChannel& channel, int m, int kicks);
EchoSeries echo_harper_qdp_series(const InitialState& state, const HarperParams& params,
                                  const KrausChannel& channel, int m,
                                  const std::vector<int>& kick_counts);

// Echo between kicked evolutions with two different kick periods (shared g,
// eta, N) compared at a common time t = n1*tau1 = n2*tau2:
//   L = ||alpha|^2 + |beta|^2 sum_x Gk1^x_1(n1 tau1) conj(Gk2^x_1(n2 tau2))|^2.
// Throws std::invalid_argument if t is not commensurate within 1e-9
// (relative) or the backgrounds differ in g/eta/N. Unentangled states only.
double echo_harper_reverse(const InitialState& state, const HarperParams& forward,
                           const HarperParams& backward, double t);
// The same echo at every commensurate time up to t_max (axis: time).
EchoSeries echo_harper_reverse_series(const InitialState& state, const HarperParams& forward,
                                      const HarperParams& backward, double t_max);

// A common time of the two kicking grids: t = n1*tau1 = n2*tau2.
struct CommensuratePoint {
  double t = 0.0;
  long long n1 = 0;
  long long n2 = 0;
};

// All commensurate times in (0, t_max], found by rational reduction of
// tau1/tau2 (continued fractions, relative tolerance 1e-9). Returns an empty
// list when the ratio admits no small rational approximation or the first
// common time exceeds t_max.
std::vector<CommensuratePoint> commensurate_times(double tau1, double tau2, double t_max);

// sum_x p_x^2 with p_x = |psi_x|^2 / sum|psi|^2: large when the amplitude
// concentrates on few sites (localized), 1/N when uniformly spread.
double inverse_participation_ratio(const Eigen::VectorXcd& amplitudes);
// Reciprocal of the above: the effective number of occupied sites.
double participation_ratio(const Eigen::VectorXcd& amplitudes);

}  // namespace magnon
