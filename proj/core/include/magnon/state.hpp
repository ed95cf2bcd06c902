#pragma once

#include <complex>

namespace magnon {

class ChainSpec;

// Initial pure state of the ring, restricted to the zero-plus-one-magnon
// sector. Two variants:
//   unentangled: alpha|F> + beta|1>   (|F> all spins up, |1> magnon at site 1)
//   entangled:   alpha|1> + beta|r>   (magnon shared between sites 1 and r)
//
// Amplitudes are renormalized if |alpha|^2 + |beta|^2 deviates from 1 by at
// most 1e-9, and rejected (std::invalid_argument) beyond that.
class InitialState {
 public:
  static InitialState unentangled(std::complex<double> alpha, std::complex<double> beta);
  static InitialState entangled(std::complex<double> alpha, std::complex<double> beta,
                                int partner_site);

  bool is_entangled() const { return entangled_; }
  std::complex<double> alpha() const { return alpha_; }
  std::complex<double> beta() const { return beta_; }
  // Site r of the entangled variant; throws std::logic_error if unentangled.
  int partner_site() const;

  // Validates the sites this state references against a chain (the partner
  // site of the entangled variant). Throws std::invalid_argument.
  void require_compatible(const ChainSpec& chain) const;

 private:
  InitialState(bool entangled, std::complex<double> alpha, std::complex<double> beta,
               int partner_site);

  bool entangled_ = false;
  std::complex<double> alpha_{1.0, 0.0};
  std::complex<double> beta_{0.0, 0.0};
  int partner_site_ = 0;
};

}  // namespace magnon
