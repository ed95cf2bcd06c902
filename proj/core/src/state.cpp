#include "magnon/state.hpp"

#include <cmath>
#include <stdexcept>

#include "magnon/chain.hpp"

namespace magnon {

InitialState::InitialState(bool entangled, std::complex<double> alpha, std::complex<double> beta,
                           int partner_site)
    : entangled_(entangled), alpha_(alpha), beta_(beta), partner_site_(partner_site) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
      !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw std::invalid_argument("InitialState: amplitudes must be finite");
  }
  const double norm_sq = std::norm(alpha_) + std::norm(beta_);
  if (std::abs(norm_sq - 1.0) > 1e-9) {
    throw std::invalid_argument("InitialState: |alpha|^2 + |beta|^2 must equal 1 (within 1e-9)");
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  alpha_ *= scale;
  beta_ *= scale;
  if (entangled_ && partner_site_ == 1) {
    throw std::invalid_argument("InitialState: entangled partner site must differ from site 1");
  }
}

InitialState InitialState::unentangled(std::complex<double> alpha, std::complex<double> beta) {
  return InitialState(false, alpha, beta, 0);
}

InitialState InitialState::entangled(std::complex<double> alpha, std::complex<double> beta,
                                     int partner_site) {
  return InitialState(true, alpha, beta, partner_site);
}

int InitialState::partner_site() const {
  if (!entangled_) {
    throw std::logic_error("InitialState: the unentangled variant has no partner site");
  }
  return partner_site_;
}

void InitialState::require_compatible(const ChainSpec& chain) const {
  if (entangled_) {
    chain.require_site(partner_site_);
  }
}

}  // namespace magnon
