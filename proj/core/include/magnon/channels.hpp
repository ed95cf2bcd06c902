#pragma once

#include <complex>
#include <limits>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace magnon {

enum class ChannelLabel { phase_flip, bit_flip, project_z, project_x, custom };

// A single-site quantum channel given by its Kraus operators E_i (2x2
// matrices in the local {up, down} basis) with completeness
// sum_i E_i^dagger E_i = 1.
struct KrausChannel {
  ChannelLabel label = ChannelLabel::custom;
  // Mixing probability p for the phase-flip / bit-flip families; NaN for
  // channels without a p parameter.
  double mixing = std::numeric_limits<double>::quiet_NaN();
  std::vector<Eigen::Matrix2cd> operators;
};

// E_0 = sqrt(p) * 1, E_1 = sqrt(1-p) * sigma^z. p in [0,1].
KrausChannel phase_flip(double p);
// E_0 = sqrt(p) * 1, E_1 = sqrt(1-p) * sigma^x. p in [0,1].
KrausChannel bit_flip(double p);
// Non-selective projective measurement along z: E_0 = (1+sigma^z)/2,
// E_1 = (1-sigma^z)/2.
KrausChannel project_z();
// Non-selective projective measurement along x: E_0 = (1+sigma^x)/2,
// E_1 = (1-sigma^x)/2.
KrausChannel project_x();
// Arbitrary operator list; rejected (std::invalid_argument) if empty or if
// the completeness residual exceeds 1e-12.
KrausChannel custom_channel(std::vector<Eigen::Matrix2cd> operators);

// Diagnostic report for a channel: max-norm residual of
// sum E_i^dagger E_i - 1, and the Frobenius norm of each operator.
struct ChannelReport {
  double completeness_residual = 0.0;
  std::vector<double> operator_norms;

  bool complete(double tolerance = 1e-12) const {
    return completeness_residual <= tolerance;
  }
};
ChannelReport validate_channel(const KrausChannel& channel);

// A coherent single-site gate acting as
//   V|up>   = gamma|up> + delta|down>
//   V|down> = -conj(delta)|up> + conj(gamma)|down>
// i.e. the unitary [[gamma, -conj(delta)], [delta, conj(gamma)]].
struct CoherentGate {
  std::complex<double> gamma{1.0, 0.0};
  std::complex<double> delta{0.0, 0.0};

  double gamma_imag() const { return gamma.imag(); }
  Eigen::Matrix2cd matrix() const;
};

// Builds the gate; (gamma, delta) are renormalized if |gamma|^2 + |delta|^2
// deviates from 1 by at most 1e-9 and rejected (std::invalid_argument)
// beyond that.
CoherentGate coherent_gate(std::complex<double> gamma, std::complex<double> delta);

// One local process applied during the evolution: at `site`, at time t0 (ring
// Hamiltonian evolution) or after kick number n0 (kicked model), either a
// Kraus channel or a coherent gate.
struct QdpEvent {
  int site = 1;
  double epoch = 0.0;
  std::variant<KrausChannel, CoherentGate> process = KrausChannel{};
};

// n sequential processes sharing one channel/gate, applied at sites
// m_1..m_n separated by a fixed time spacing.
struct QdpSequence {
  double spacing = 1.0;
  std::vector<int> sites;
  std::variant<KrausChannel, CoherentGate> process = KrausChannel{};
};

}  // namespace magnon
