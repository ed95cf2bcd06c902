#pragma once

#include <optional>

namespace magnon {

// Description of the spin ring whose zero- and one-magnon sectors drive all
// analytic echo formulas: site count (or infinite-chain mode), anisotropy
// Delta of the z-z coupling, and the zero<->one-magnon relative phase rate
// ("magnon gap", default 2*Delta for the ring Hamiltonian used here).
//
// Site indexing is 1-based throughout; the reference magnon starts at site 1.
class ChainSpec {
 public:
  // Periodic ring with num_sites >= 3. The default magnon gap is 2*Delta.
  static ChainSpec finite(int num_sites, double anisotropy);
  static ChainSpec finite(int num_sites, double anisotropy, double magnon_gap);
  // Thermodynamic-limit chain: propagators take the Bessel form, and
  // quantities that grow with the site count (ground-state energy) are
  // unavailable.
  static ChainSpec infinite(double anisotropy);
  static ChainSpec infinite(double anisotropy, double magnon_gap);

  bool is_finite() const { return size_.has_value(); }
  // Throws std::logic_error in infinite mode.
  int num_sites() const;
  double anisotropy() const { return anisotropy_; }
  double magnon_gap() const { return magnon_gap_; }
  // -N*Delta/2; only defined in finite mode (throws std::logic_error
  // otherwise, as it diverges with the site count).
  double ground_state_energy() const;

  // Validates a 1-based site index against this chain: finite mode requires
  // 1 <= site <= N (throws std::invalid_argument), infinite mode accepts any
  // integer.
  void require_site(int site) const;

 private:
  ChainSpec(std::optional<int> size, double anisotropy, double magnon_gap);

  std::optional<int> size_;
  double anisotropy_ = 0.0;
  double magnon_gap_ = 0.0;
};

}  // namespace magnon
