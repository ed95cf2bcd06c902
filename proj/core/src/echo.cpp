#include "magnon/echo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

#include "magnon/propagator.hpp"

namespace magnon {
namespace {

using cplx = std::complex<double>;

constexpr double kPauliTol = 1e-13;

// Coefficients of E = c0*1 + cx*sigma^x + cy*sigma^y + cz*sigma^z.
struct PauliCoefficients {
  cplx c0, cx, cy, cz;
};

PauliCoefficients pauli_decompose(const Eigen::Matrix2cd& op) {
  PauliCoefficients c;
  c.c0 = 0.5 * (op(0, 0) + op(1, 1));
  c.cz = 0.5 * (op(0, 0) - op(1, 1));
  c.cx = 0.5 * (op(0, 1) + op(1, 0));
  c.cy = cplx(0.0, -0.5) * (op(1, 0) - op(0, 1));
  return c;
}

void require_epoch(double t0) {
  if (!std::isfinite(t0) || t0 < 0.0) {
    throw std::invalid_argument("echo: the event epoch must be a finite non-negative real");
  }
}

// <sigma^y_m> at time t0; no closed form for the entangled variant.
double expect_sigma_y(const InitialState& state, const ChainSpec& chain, int m, double t0) {
  if (state.is_entangled()) {
    throw unsupported_analytically(
        "sigma^y expectation of the entangled state has no closed form; use the oracle");
  }
  return 2.0 * std::imag(std::conj(state.alpha()) * state.beta() * dressed_green(chain, m, t0));
}

void check_echo_value(double value) {
  if (!(value >= -1e-10 && value <= 1.0 + 1e-10)) {
    throw std::logic_error("echo: computed value outside [0, 1]");
  }
}

// Shared validation for the multi-event operations.
void require_sequence(const InitialState& state, const ChainSpec& chain,
                      const QdpSequence& sequence) {
  if (!chain.is_finite()) {
    throw std::invalid_argument("multi-event echo: requires a finite chain");
  }
  if (!(std::isfinite(sequence.spacing) && sequence.spacing > 0.0)) {
    throw std::invalid_argument("multi-event echo: spacing must be a positive real");
  }
  if (sequence.sites.empty()) {
    throw std::invalid_argument("multi-event echo: the site list must be non-empty");
  }
  for (int site : sequence.sites) {
    chain.require_site(site);
  }
  state.require_compatible(chain);
}

// Sector basis used below: index 0 = |F>, index x = magnon at site x (1..N).
// The evolution block is 1 (vacuum) direct-sum e^{-i*gap*t} G(t); the global
// ground-state phase is common to the interrupted and reference states and
// cancels in every overlap, so it is dropped.
Eigen::MatrixXcd sector_unitary(const ChainSpec& chain, double dt) {
  const int n = chain.num_sites();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  u(0, 0) = 1.0;
  const cplx gap_phase = std::polar(1.0, -chain.magnon_gap() * dt);
  u.block(1, 1, n, n) = gap_phase * propagator_matrix(chain, dt).amplitudes;
  return u;
}

Eigen::VectorXcd sector_state(const InitialState& state, int num_sites) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(num_sites + 1);
  if (state.is_entangled()) {
    psi(1) = state.alpha();
    psi(state.partner_site()) = state.beta();
  } else {
    psi(0) = state.alpha();
    psi(1) = state.beta();
  }
  return psi;
}

// The magnon-sector part of the initial state (its vacuum amplitude is
// tracked separately by the callers: it contributes |alpha|^2 per string for
// the unentangled variant and nothing for the entangled one).
Eigen::VectorXcd magnon_component(const InitialState& state, int num_sites) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(num_sites);
  if (state.is_entangled()) {
    v(0) = state.alpha();
    v(state.partner_site() - 1) = state.beta();
  } else {
    v(0) = state.beta();
  }
  return v;
}

double string_vacuum_term(const InitialState& state) {
  return state.is_entangled() ? 0.0 : std::norm(state.alpha());
}

}  // namespace

double expect_sigma_z(const InitialState& state, const ChainSpec& chain, int m, double t0) {
  chain.require_site(m);
  state.require_compatible(chain);
  require_epoch(t0);
  if (state.is_entangled()) {
    return 1.0 - 2.0 * std::norm(combined_k(state, chain, m, t0));
  }
  return 1.0 - 2.0 * std::norm(state.beta() * green(chain, m, 1, t0));
}

double expect_sigma_x(const InitialState& state, const ChainSpec& chain, int m, double t0) {
  chain.require_site(m);
  state.require_compatible(chain);
  require_epoch(t0);
  if (state.is_entangled()) {
    return 0.0;
  }
  return 2.0 * std::real(std::conj(state.alpha()) * state.beta() * dressed_green(chain, m, t0));
}

double echo_incoherent(const InitialState& state, const ChainSpec& chain, const QdpEvent& event) {
  const auto* channel = std::get_if<KrausChannel>(&event.process);
  if (channel == nullptr) {
    throw std::invalid_argument("echo_incoherent: the event must carry a Kraus channel");
  }
  if (channel->operators.empty()) {
    throw std::invalid_argument("echo_incoherent: channel has no operators");
  }
  chain.require_site(event.site);
  state.require_compatible(chain);
  require_epoch(event.epoch);

  const int m = event.site;
  const double t0 = event.epoch;
  const double ez = expect_sigma_z(state, chain, m, t0);
  bool have_ex = false, have_ey = false;
  double ex = 0.0, ey = 0.0;
  double echo = 0.0;
  for (const auto& op : channel->operators) {
    const PauliCoefficients c = pauli_decompose(op);
    if (std::abs(c.cx) > kPauliTol && !have_ex) {
      ex = expect_sigma_x(state, chain, m, t0);
      have_ex = true;
    }
    if (std::abs(c.cy) > kPauliTol && !have_ey) {
      ey = expect_sigma_y(state, chain, m, t0);
      have_ey = true;
    }
    echo += std::norm(c.c0 + c.cz * ez + c.cx * ex + c.cy * ey);
  }
  check_echo_value(echo);
  return echo;
}

double echo_coherent(const InitialState& state, const ChainSpec& chain, int m, double t0,
                     const CoherentGate& gate) {
  chain.require_site(m);
  state.require_compatible(chain);
  require_epoch(t0);
  const cplx two_i_gamma_imag(0.0, 2.0 * gate.gamma_imag());
  cplx amplitude;
  if (state.is_entangled()) {
    amplitude = gate.gamma - two_i_gamma_imag * std::norm(combined_k(state, chain, m, t0));
  } else {
    const cplx g_m = green(chain, m, 1, t0);
    const cplx cross = state.alpha() * std::conj(state.beta()) * gate.delta *
                       std::conj(dressed_green(chain, m, t0));
    amplitude = gate.gamma - two_i_gamma_imag * std::norm(state.beta() * g_m) +
                cplx(0.0, 2.0) * std::imag(cross);
  }
  const double echo = std::norm(amplitude);
  check_echo_value(echo);
  return echo;
}

EchoSeries echo_multi_exact_z(const InitialState& state, const ChainSpec& chain,
                              const QdpSequence& sequence) {
  require_sequence(state, chain, sequence);
  const auto* channel = std::get_if<KrausChannel>(&sequence.process);
  if (channel == nullptr) {
    throw unsupported_analytically(
        "echo_multi_exact_z: coherent sequences leave no sector-diagonal form; use the oracle");
  }
  // Each operator must act within span{1, sigma^z} at its site, or the state
  // leaves the zero-plus-one-magnon sector.
  std::vector<PauliCoefficients> coeffs;
  coeffs.reserve(channel->operators.size());
  for (const auto& op : channel->operators) {
    const PauliCoefficients c = pauli_decompose(op);
    if (std::abs(c.cx) > kPauliTol || std::abs(c.cy) > kPauliTol) {
      throw unsupported_analytically(
          "echo_multi_exact_z: channel is not sigma^z-diagonal; use the oracle");
    }
    coeffs.push_back(c);
  }

  const int n = chain.num_sites();
  const Eigen::MatrixXcd u = sector_unitary(chain, sequence.spacing);
  Eigen::VectorXcd reference = sector_state(state, n);
  Eigen::MatrixXcd rho = reference * reference.adjoint();

  EchoSeries series;
  series.axis = SweepAxis::n;
  for (std::size_t j = 0; j < sequence.sites.size(); ++j) {
    rho = u * rho * u.adjoint();
    reference = u * reference;
    // Kraus action: every operator is diagonal in the sector basis, with
    // entry c0 + cz on every basis state except |m> where sigma^z = -1.
    const int m = sequence.sites[j];
    Eigen::MatrixXcd mixer = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (const auto& c : coeffs) {
      Eigen::VectorXcd diag = Eigen::VectorXcd::Constant(n + 1, c.c0 + c.cz);
      diag(m) = c.c0 - c.cz;
      mixer += diag * diag.adjoint();
    }
    rho = mixer.cwiseProduct(rho);
    const double trace_drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (trace_drift > 1e-9) {
      throw std::logic_error("echo_multi_exact_z: sector density lost unit trace");
    }
    const cplx overlap = (reference.adjoint() * rho * reference)(0, 0);
    if (std::abs(overlap.imag()) > 1e-10) {
      throw std::logic_error("echo_multi_exact_z: echo acquired an imaginary part");
    }
    series.samples.emplace_back(static_cast<double>(j + 1), overlap.real());
  }
  check_echo_range(series);
  return series;
}

std::complex<double> string_amplitude_truncated(const ChainSpec& chain, const InitialState& state,
                                                const std::vector<int>& sites,
                                                const std::vector<double>& intervals, int order) {
  if (!chain.is_finite()) {
    throw std::invalid_argument("string_amplitude_truncated: requires a finite chain");
  }
  if (order < 2) {
    throw std::invalid_argument("string_amplitude_truncated: order must be at least 2");
  }
  if (sites.empty() || sites.size() != intervals.size()) {
    throw std::invalid_argument(
        "string_amplitude_truncated: sites and intervals must be non-empty and equal-length");
  }
  for (int site : sites) {
    chain.require_site(site);
  }
  for (double dt : intervals) {
    if (!std::isfinite(dt) || dt < 0.0) {
      throw std::invalid_argument("string_amplitude_truncated: intervals must be non-negative");
    }
  }
  state.require_compatible(chain);

  const int n = chain.num_sites();
  const int num_events = static_cast<int>(sites.size());
  // The zero<->one-magnon relative phase and the ground-state phase both
  // cancel between the equal-duration forward and backward evolutions of a
  // string expectation, so the bare ring propagator is used throughout.
  std::map<double, Eigen::MatrixXcd> flights;
  for (double dt : intervals) {
    if (flights.find(dt) == flights.end()) {
      flights.emplace(dt, propagator_matrix(chain, dt).amplitudes);
    }
  }

  // w[q] collects the magnon-sector amplitude carrying q projector
  // insertions; a term with q insertions contributes q+1 amplitude factors,
  // so truncation at `order` keeps q <= order-1.
  const int max_insertions = std::min(order - 1, num_events);
  std::vector<Eigen::VectorXcd> w;
  w.reserve(max_insertions + 1);
  w.push_back(magnon_component(state, n));
  Eigen::VectorXcd reference = magnon_component(state, n);

  for (int j = 0; j < num_events; ++j) {
    const Eigen::MatrixXcd& flight = flights.at(intervals[j]);
    for (auto& vec : w) {
      vec = flight * vec;
    }
    reference = flight * reference;
    if (static_cast<int>(w.size()) <= max_insertions) {
      w.push_back(Eigen::VectorXcd::Zero(n));
    }
    // sigma^z = 1 - 2|m><m|: descend so each w[q] picks up the evolved, not
    // yet sigma^z-updated w[q-1].
    const int site_index = sites[j] - 1;
    for (int q = static_cast<int>(w.size()) - 1; q >= 1; --q) {
      w[q](site_index) -= 2.0 * w[q - 1](site_index);
    }
  }

  cplx amplitude = string_vacuum_term(state);
  for (const auto& vec : w) {
    amplitude += reference.dot(vec);
  }
  return amplitude;
}

EchoSeries echo_multi_truncated(const InitialState& state, const ChainSpec& chain,
                                const QdpSequence& sequence, int order) {
  require_sequence(state, chain, sequence);
  if (order < 2) {
    throw std::invalid_argument("echo_multi_truncated: order must be at least 2");
  }
  const auto* channel = std::get_if<KrausChannel>(&sequence.process);
  if (channel == nullptr ||
      (channel->label != ChannelLabel::phase_flip && channel->label != ChannelLabel::project_z)) {
    throw unsupported_analytically(
        "echo_multi_truncated: the string assembly covers phase-flip and projective-z channels "
        "only; use the oracle");
  }
  const double p = channel->label == ChannelLabel::phase_flip ? channel->mixing : 0.5;
  const int num_events = static_cast<int>(sequence.sites.size());
  if (num_events > 16) {
    throw std::invalid_argument(
        "echo_multi_truncated: at most 16 events (the assembly enumerates 2^n strings)");
  }

  const int n = chain.num_sites();
  const Eigen::MatrixXcd flight = propagator_matrix(chain, sequence.spacing).amplitudes;
  const int max_insertions = std::min(order - 1, num_events);
  Eigen::VectorXcd reference = magnon_component(state, n);
  for (int j = 0; j < num_events; ++j) {
    reference = flight * reference;
  }
  const double vacuum_term = string_vacuum_term(state);

  // Depth-first enumeration of all 2^n sigma^z insertion patterns, sharing
  // evolved prefixes. amplitude_sq[mask] = |A_S|^2 for the pattern whose bit
  // j marks a sigma^z at event j+1.
  std::vector<double> amplitude_sq(std::size_t{1} << num_events, 0.0);
  std::vector<Eigen::VectorXcd> w;
  w.push_back(magnon_component(state, n));

  auto descend = [&](auto&& self, int depth, unsigned mask,
                     std::vector<Eigen::VectorXcd> current) -> void {
    if (depth == num_events) {
      cplx amplitude = vacuum_term;
      for (const auto& vec : current) {
        amplitude += reference.dot(vec);
      }
      amplitude_sq[mask] = std::norm(amplitude);
      return;
    }
    for (auto& vec : current) {
      vec = flight * vec;
    }
    // Branch without an insertion at this event.
    self(self, depth + 1, mask, current);
    // Branch with sigma^z = 1 - 2|m><m| inserted.
    const int site_index = sequence.sites[depth] - 1;
    if (static_cast<int>(current.size()) <= max_insertions) {
      current.push_back(Eigen::VectorXcd::Zero(n));
    }
    for (int q = static_cast<int>(current.size()) - 1; q >= 1; --q) {
      current[q](site_index) -= 2.0 * current[q - 1](site_index);
    }
    self(self, depth + 1, mask | (1u << depth), std::move(current));
  };
  descend(descend, 0, 0u, w);

  EchoSeries series;
  series.axis = SweepAxis::n;
  for (int j = 1; j <= num_events; ++j) {
    const unsigned prefix = (j == 32) ? 0xffffffffu : ((1u << j) - 1u);
    double echo = 0.0;
    for (unsigned mask = 0; mask < (1u << num_events); ++mask) {
      if ((mask & ~prefix) != 0) {
        continue;
      }
      const int inserted = std::popcount(mask);
      echo += std::pow(p, j - inserted) * std::pow(1.0 - p, inserted) * amplitude_sq[mask];
    }
    series.samples.emplace_back(static_cast<double>(j), echo);
  }
  // At order >= n+1 the assembly is exact and must be a probability; below
  // that it is an asymptotic approximation and may overshoot the range when
  // pushed outside its validity window (short spacings, many events).
  if (order >= num_events + 1) {
    check_echo_range(series);
  }
  return series;
}

double coherent_asymptote(const CoherentGate& gate, int num_gates) {
  if (num_gates < 0) {
    throw std::invalid_argument("coherent_asymptote: the gate count must be non-negative");
  }
  return std::pow(std::norm(gate.gamma), num_gates);
}

}  // namespace magnon
