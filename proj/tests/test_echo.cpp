#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>
#include <Eigen/Dense>

#include <magnon/chain.hpp>
#include <magnon/channels.hpp>
#include <magnon/echo.hpp>
#include <magnon/errors.hpp>
#include <magnon/propagator.hpp>
#include <magnon/state.hpp>

using magnon::ChainSpec;
using magnon::InitialState;
using cplx = std::complex<double>;

namespace {

const cplx kHalf(0.7071067811865476, 0.0);

InitialState half_half() { return InitialState::unentangled(kHalf, kHalf); }

magnon::QdpEvent kraus_event(int site, double epoch, const magnon::KrausChannel& channel) {
  magnon::QdpEvent event;
  event.site = site;
  event.epoch = epoch;
  event.process = channel;
  return event;
}

}  // namespace

TEST_CASE("local expectation values at time zero") {
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  const auto state = InitialState::unentangled(cplx(0.6, 0.0), cplx(0.0, 0.8));
  CHECK(magnon::expect_sigma_z(state, chain, 1, 0.0) == doctest::Approx(1.0 - 2.0 * 0.64));
  CHECK(magnon::expect_sigma_z(state, chain, 4, 0.0) == doctest::Approx(1.0));
  // <sigma^x> at t=0 is 2 Re(conj(alpha) beta) at the magnon site.
  const auto real_state = half_half();
  CHECK(magnon::expect_sigma_x(real_state, chain, 1, 0.0) == doctest::Approx(1.0));
  CHECK(magnon::expect_sigma_x(real_state, chain, 3, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("entangled expectations use the combined amplitude") {
  const ChainSpec chain = ChainSpec::finite(12, 1.0);
  const auto state = InitialState::entangled(kHalf, kHalf, 5);
  const double t = 1.7;
  const int m = 3;
  const cplx k = magnon::combined_k(state, chain, m, t);
  CHECK(magnon::expect_sigma_z(state, chain, m, t) ==
        doctest::Approx(1.0 - 2.0 * std::norm(k)).epsilon(1e-12));
  // No zero-magnon component: transverse expectations vanish identically.
  CHECK(magnon::expect_sigma_x(state, chain, m, t) == doctest::Approx(0.0));
}

TEST_CASE("single-event echoes reduce to expectation-value formulas") {
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  const std::vector<InitialState> states = {half_half(),
                                            InitialState::entangled(kHalf, kHalf, 5)};
  for (const auto& state : states) {
    for (double t0 : {0.0, 0.8, 2.9}) {
      for (int m : {1, 2, 6}) {
        const double ez = magnon::expect_sigma_z(state, chain, m, t0);
        const double ex = magnon::expect_sigma_x(state, chain, m, t0);
        CAPTURE(t0);
        CAPTURE(m);
        const double p = 0.37;
        CHECK(magnon::echo_incoherent(state, chain, kraus_event(m, t0, magnon::phase_flip(p))) ==
              doctest::Approx(p + (1.0 - p) * ez * ez).epsilon(1e-12));
        CHECK(magnon::echo_incoherent(state, chain, kraus_event(m, t0, magnon::bit_flip(p))) ==
              doctest::Approx(p + (1.0 - p) * ex * ex).epsilon(1e-12));
        CHECK(magnon::echo_incoherent(state, chain, kraus_event(m, t0, magnon::project_z())) ==
              doctest::Approx(0.5 * (1.0 + ez * ez)).epsilon(1e-12));
        CHECK(magnon::echo_incoherent(state, chain, kraus_event(m, t0, magnon::project_x())) ==
              doctest::Approx(0.5 * (1.0 + ex * ex)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("entangled state with a bit flip gives exactly the mixing probability") {
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  const auto state = InitialState::entangled(kHalf, kHalf, 5);
  for (double p : {0.0, 0.31, 1.0}) {
    CHECK(std::abs(magnon::echo_incoherent(state, chain, kraus_event(2, 1.3, magnon::bit_flip(p))) -
                   p) <= 1e-12);
  }
}

TEST_CASE("sigma-y content is rejected only for the entangled state") {
  Eigen::Matrix2cd sy;
  sy << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  const auto channel = magnon::custom_channel(
      {std::sqrt(0.5) * Eigen::Matrix2cd::Identity(), std::sqrt(0.5) * sy});
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  CHECK_NOTHROW(magnon::echo_incoherent(half_half(), chain, kraus_event(1, 0.5, channel)));
  CHECK_THROWS_AS(magnon::echo_incoherent(InitialState::entangled(kHalf, kHalf, 5), chain,
                                          kraus_event(1, 0.5, channel)),
                  magnon::unsupported_analytically);
}

TEST_CASE("coherent gate echo: closed form and special cases") {
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  const cplx gamma(0.5773502691896258, 0.5773502691896258);
  const cplx delta(0.5773502691896258, 0.0);
  const auto gate = magnon::coherent_gate(gamma, delta);

  // Magnon absent: only the gamma matrix element survives.
  const auto vacuum = InitialState::unentangled(cplx(1.0, 0.0), cplx(0.0, 0.0));
  for (double t0 : {0.0, 1.2}) {
    CHECK(magnon::echo_coherent(vacuum, chain, 2, t0, gate) ==
          doctest::Approx(std::norm(gamma)).epsilon(1e-12));
  }

  // General unentangled value against an independent evaluation of the
  // amplitude formula.
  const auto state = half_half();
  const int m = 2;
  const double t0 = 1.4;
  const cplx g = magnon::green_finite(chain, m, 1, t0);
  const cplx dressed = magnon::dressed_green(chain, m, t0);
  const cplx amp = gamma - cplx(0.0, 2.0) * gamma.imag() * std::norm(kHalf * g) +
                   cplx(0.0, 2.0) * std::imag(kHalf * std::conj(kHalf) * delta * std::conj(dressed));
  CHECK(magnon::echo_coherent(state, chain, m, t0, gate) ==
        doctest::Approx(std::norm(amp)).epsilon(1e-12));

  // A gate with real gamma acting far from any magnon weight leaves the state
  // almost unchanged except the vacuum matrix element.
  const auto real_gate = magnon::coherent_gate(cplx(0.8, 0.0), cplx(0.6, 0.0));
  CHECK(magnon::echo_coherent(vacuum, chain, 4, 0.7, real_gate) == doctest::Approx(0.64));
}

TEST_CASE("sequence of one event matches the single-event echo") {
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  for (const auto& state : {half_half(), InitialState::entangled(kHalf, kHalf, 5)}) {
    for (double spacing : {0.4, 2.2}) {
      magnon::QdpSequence sequence;
      sequence.spacing = spacing;
      sequence.sites = {3};
      sequence.process = magnon::project_z();
      const auto series = magnon::echo_multi_exact_z(state, chain, sequence);
      REQUIRE(series.samples.size() == 1);
      CHECK(series.samples[0].second ==
            doctest::Approx(magnon::echo_incoherent(
                                state, chain, kraus_event(3, spacing, magnon::project_z())))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("truncated sequence echo converges to the sector-exact value") {
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  magnon::QdpSequence sequence;
  sequence.spacing = 0.9;
  sequence.sites = {3, 1, 6, 9};
  sequence.process = magnon::phase_flip(0.4);
  const auto exact = magnon::echo_multi_exact_z(half_half(), chain, sequence);
  const auto truncated =
      magnon::echo_multi_truncated(half_half(), chain, sequence, /*order=*/5);
  REQUIRE(exact.samples.size() == truncated.samples.size());
  for (std::size_t i = 0; i < exact.samples.size(); ++i) {
    CHECK(truncated.samples[i].second ==
          doctest::Approx(exact.samples[i].second).epsilon(1e-10));
  }
  // Low truncation order is close but not exact at the last event.
  const auto coarse = magnon::echo_multi_truncated(half_half(), chain, sequence, 2);
  CHECK(std::abs(coarse.samples.back().second - exact.samples.back().second) > 1e-12);
  CHECK(std::abs(coarse.samples.back().second - exact.samples.back().second) < 0.2);
}

TEST_CASE("string amplitude: zero-order terms at order >= n+1 reproduce brute force") {
  // At t=0 and a single insertion the string is <Psi|sigma^z_m|Psi>.
  const ChainSpec chain = ChainSpec::finite(8, 1.0);
  const auto state = half_half();
  const cplx amp = magnon::string_amplitude_truncated(chain, state, {1}, {0.0}, 2);
  CHECK(std::abs(amp - cplx(magnon::expect_sigma_z(state, chain, 1, 0.0), 0.0)) <= 1e-13);
  CHECK_THROWS_AS(magnon::string_amplitude_truncated(chain, state, {1}, {0.0}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(magnon::string_amplitude_truncated(chain, state, {1, 2}, {0.0}, 3),
                  std::invalid_argument);
}

TEST_CASE("sequences reject what the sector treatment cannot express") {
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  magnon::QdpSequence sequence;
  sequence.spacing = 1.0;
  sequence.sites = {1, 2};
  sequence.process = magnon::bit_flip(0.5);
  CHECK_THROWS_AS(magnon::echo_multi_exact_z(half_half(), chain, sequence),
                  magnon::unsupported_analytically);
  CHECK_THROWS_AS(magnon::echo_multi_truncated(half_half(), chain, sequence, 3),
                  magnon::unsupported_analytically);
  sequence.process = magnon::project_z();
  CHECK_THROWS_AS(
      magnon::echo_multi_exact_z(half_half(), ChainSpec::infinite(1.0), sequence),
      std::invalid_argument);
  sequence.sites = std::vector<int>(17, 1);
  CHECK_THROWS_AS(magnon::echo_multi_truncated(half_half(), chain, sequence, 2),
                  std::invalid_argument);
}

TEST_CASE("echo curves remain inside [0, 1]") {
  const ChainSpec chain = ChainSpec::finite(9, 1.0);
  magnon::QdpSequence sequence;
  sequence.spacing = 0.7;
  sequence.sites = {2, 5, 1, 7, 3, 9, 4};
  sequence.process = magnon::project_z();
  for (const auto& state : {half_half(), InitialState::entangled(kHalf, kHalf, 4)}) {
    for (const auto& [n, value] : magnon::echo_multi_exact_z(state, chain, sequence).samples) {
      CAPTURE(n);
      CHECK(value >= -1e-12);
      CHECK(value <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("saturation of repeated coherent gates") {
  const auto gate = magnon::coherent_gate(cplx(0.5773502691896258, 0.5773502691896258),
                                          cplx(0.5773502691896258, 0.0));
  CHECK(magnon::coherent_asymptote(gate, 0) == doctest::Approx(1.0));
  CHECK(magnon::coherent_asymptote(gate, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(magnon::coherent_asymptote(gate, 2) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK_THROWS_AS(magnon::coherent_asymptote(gate, -1), std::invalid_argument);
}
