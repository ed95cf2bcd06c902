#include "magnon/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace magnon {
namespace {

void require_finite_real(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string("ChainSpec: ") + name + " must be a finite real");
  }
}

}  // namespace

ChainSpec::ChainSpec(std::optional<int> size, double anisotropy, double magnon_gap)
    : size_(size), anisotropy_(anisotropy), magnon_gap_(magnon_gap) {
  require_finite_real(anisotropy_, "anisotropy");
  require_finite_real(magnon_gap_, "magnon_gap");
  if (size_.has_value() && *size_ < 3) {
    throw std::invalid_argument("ChainSpec: a finite ring needs at least 3 sites");
  }
}

ChainSpec ChainSpec::finite(int num_sites, double anisotropy) {
  return finite(num_sites, anisotropy, 2.0 * anisotropy);
}

ChainSpec ChainSpec::finite(int num_sites, double anisotropy, double magnon_gap) {
  return ChainSpec(num_sites, anisotropy, magnon_gap);
}

ChainSpec ChainSpec::infinite(double anisotropy) {
  return infinite(anisotropy, 2.0 * anisotropy);
}

ChainSpec ChainSpec::infinite(double anisotropy, double magnon_gap) {
  return ChainSpec(std::nullopt, anisotropy, magnon_gap);
}

int ChainSpec::num_sites() const {
  if (!size_.has_value()) {
    throw std::logic_error("ChainSpec: num_sites is undefined for the infinite chain");
  }
  return *size_;
}

double ChainSpec::ground_state_energy() const {
  if (!size_.has_value()) {
    throw std::logic_error("ChainSpec: ground-state energy diverges on the infinite chain");
  }
  return -0.5 * static_cast<double>(*size_) * anisotropy_;
}

void ChainSpec::require_site(int site) const {
  if (size_.has_value() && (site < 1 || site > *size_)) {
    throw std::invalid_argument("ChainSpec: site index out of range 1..N");
  }
}

}  // namespace magnon
