#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "magnon/chain.hpp"
#include "magnon/channels.hpp"
#include "magnon/harper.hpp"
#include "magnon/state.hpp"

namespace magnon {

// Largest ring the dense reference implementation accepts (dimension 2^12 =
// 4096 keeps full density matrices well under half a gigabyte).
inline constexpr int kMaxOracleSites = 12;

// A dense operator on the full 2^N-dimensional spin-ring Hilbert space.
// Basis convention: site x (1-based) maps to bit x-1; a clear bit is an up
// spin, a set bit a down spin. |F> (all up) is basis index 0 and the
// one-magnon state with the down spin at site x is index 2^(x-1).
struct DenseOperator {
  int sites = 0;
  Eigen::MatrixXcd matrix;

  int dimension() const { return 1 << sites; }
  // max-norm of M - M^dagger.
  double hermiticity_residual() const;
  // max-norm of M^dagger M - 1.
  double unitarity_residual() const;
};

// Ring Hamiltonian H = -1/2 sum_i (sx_i sx_{i+1} + sy_i sy_{i+1}
// + anisotropy * sz_i sz_{i+1}), site N+1 identified with site 1.
// Requires a finite chain with N <= kMaxOracleSites.
DenseOperator build_xxz(const ChainSpec& chain);

// One-period unitary of the kicked ring on the full space:
// diag(kick) * exp(-i tau H_flight), where the kick phase of a basis state
// is e^{-i tau g sum_j cos(2 pi eta j / N) z_j} (z_j = +1 up, -1 down).
// Requires N <= kMaxOracleSites.
DenseOperator build_floquet(const HarperParams& params);

// The 2x2 operator `op` acting on `site` of an N-site ring, as a dense
// 2^N x 2^N operator (identity elsewhere).
DenseOperator embed_site_operator(const Eigen::Matrix2cd& op, int site, int sites);

// The full-space vector of an initial state on an N-site ring:
// alpha|F> + beta|1> (unentangled) or alpha|1> + beta|r> (entangled).
Eigen::VectorXcd embed_state(const InitialState& state, int sites);

// psi <- (op at site) psi, without building the embedded operator.
Eigen::VectorXcd apply_site_operator(const Eigen::Matrix2cd& op, int site,
                                     const Eigen::VectorXcd& psi);

// Unitary coherent gate at a site; norm is preserved.
Eigen::VectorXcd apply_gate(const Eigen::VectorXcd& psi, const CoherentGate& gate, int site);

// Dense density matrix on the full space.
struct FullDensity {
  Eigen::MatrixXcd matrix;

  double trace_deviation() const;     // |tr(rho) - 1|
  double hermiticity_residual() const;
};

FullDensity density_from_pure(const Eigen::VectorXcd& psi);
FullDensity evolve_density(const FullDensity& rho, const Eigen::MatrixXcd& unitary);
// rho <- sum_i (E_i at site) rho (E_i at site)^dagger; trace is preserved.
FullDensity apply_kraus(const FullDensity& rho, const KrausChannel& channel, int site);

// Exact evolution by a dense Hermitian generator, via an eigendecomposition
// computed once and reused across times.
class HamiltonianEvolver {
 public:
  explicit HamiltonianEvolver(const DenseOperator& hamiltonian);

  Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi, double t) const;
  Eigen::MatrixXcd unitary(double t) const;
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

// The N x N one-magnon block of a full-space operator, in site order:
// block(x-1, y-1) = <x|M|y>.
Eigen::MatrixXcd one_magnon_block(const DenseOperator& op);

// A complete reference computation: background evolution (ring Hamiltonian
// or kicked ring), initial state, time-ordered local processes, and the
// final readout time (>= the last epoch; for the kicked ring all times must
// be integer multiples of tau).
struct OracleScenario {
  std::variant<ChainSpec, HarperParams> background = ChainSpec::finite(10, 1.0);
  InitialState state = InitialState::unentangled(1.0, 0.0);
  std::vector<QdpEvent> events;
  double total_time = 0.0;
};

// Reference engine with the background eigendecomposition cached, so that
// repeated echoes against one background cost only matrix-vector work.
// Immutable after construction; safe to share across threads.
class OracleSession {
 public:
  explicit OracleSession(const ChainSpec& chain);
  explicit OracleSession(const HarperParams& params);

  int sites() const { return sites_; }

  // Echo of the processed evolution against the clean one,
  // <Psi(t)| rho-tilde(t) |Psi(t)>, by unravelling the Kraus channels into
  // pure branches. Verifies that the value is unchanged by evolving past
  // `total_time` (throws std::logic_error if not).
  double echo(const InitialState& state, const std::vector<QdpEvent>& events,
              double total_time) const;

  // The same echo through the dense density-matrix update; used to
  // cross-check the branch unravelling.
  double echo_density(const InitialState& state, const std::vector<QdpEvent>& events,
                      double total_time) const;

  // Clean evolution of the embedded state from time 0 (ring background) or
  // over round(t / tau) kicks (kicked background).
  Eigen::VectorXcd evolve_state(const Eigen::VectorXcd& psi, double from, double to) const;

 private:
  void check_events(const InitialState& state, const std::vector<QdpEvent>& events,
                    double total_time) const;
  // Evolves every column of `block` from time `from` to time `to`.
  void evolve_block(Eigen::MatrixXcd& block, double from, double to) const;

  int sites_ = 0;
  bool kicked_ = false;
  double tau_ = 0.0;             // kicked background only
  Eigen::MatrixXcd floquet_;     // kicked background only
  Eigen::VectorXd eigenvalues_;  // ring background only
  Eigen::MatrixXcd eigenvectors_;
};

// One-shot convenience wrapper around OracleSession::echo.
double oracle_echo(const OracleScenario& scenario);

}  // namespace magnon
