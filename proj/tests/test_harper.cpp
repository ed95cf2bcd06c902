#include <cmath>
#include <numbers>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>
#include <Eigen/Dense>

#include <magnon/chain.hpp>
#include <magnon/channels.hpp>
#include <magnon/echo.hpp>
#include <magnon/harper.hpp>
#include <magnon/propagator.hpp>
#include <magnon/state.hpp>

using magnon::HarperParams;
using magnon::InitialState;
using cplx = std::complex<double>;

namespace {

HarperParams params(double g, double tau, int eta, int size) {
  HarperParams p;
  p.g = g;
  p.tau = tau;
  p.eta = eta;
  p.size = size;
  return p;
}

const cplx kHalf(0.7071067811865476, 0.0);

}  // namespace

TEST_CASE("kick phases have unit modulus and the stated argument") {
  const auto p = params(1.3, 0.7, 2, 9);
  const auto phases = magnon::kick_phases(p);
  REQUIRE(phases.size() == 9);
  for (int x = 1; x <= 9; ++x) {
    const double angle = 2.0 * p.tau * p.g * std::cos(2.0 * std::numbers::pi * p.eta * x / 9.0);
    CHECK(std::abs(phases[static_cast<std::size_t>(x - 1)] - std::polar(1.0, angle)) <= 1e-14);
  }
}

TEST_CASE("zero kick strength reduces to free flight") {
  const auto p = params(0.0, 0.4, 1, 14);
  const auto step = magnon::harper_step(p);
  const auto flight = magnon::propagator_matrix(magnon::flight_chain(p), p.tau);
  CHECK((step.amplitudes - flight.amplitudes).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("composite propagator is unitary and satisfies the semigroup rule") {
  const auto p = params(1.0, 0.8, 1, 20);
  const auto g3 = magnon::harper_green(p, 3);
  const auto g5 = magnon::harper_green(p, 5);
  const auto g8 = magnon::harper_green(p, 8);
  CHECK(magnon::max_column_norm_deviation(g8) <= 1e-12);
  CHECK((g5.amplitudes * g3.amplitudes - g8.amplitudes).cwiseAbs().maxCoeff() <= 1e-12);
  const auto identity = magnon::harper_green(p, 0);
  CHECK((identity.amplitudes - Eigen::MatrixXcd::Identity(20, 20)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("column walker agrees with the full propagator") {
  const auto p = params(0.9, 0.3, 2, 15);
  const auto full = magnon::harper_green(p, 7);
  const auto column = magnon::harper_column(p, 7, 4);
  CHECK((full.amplitudes.col(3) - column).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(magnon::require_valid(params(-0.1, 0.5, 1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(magnon::require_valid(params(1.0, 0.0, 1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(magnon::require_valid(params(1.0, 0.5, 0, 10)), std::invalid_argument);
  CHECK_THROWS_AS(magnon::require_valid(params(1.0, 0.5, 10, 10)), std::invalid_argument);
  CHECK_THROWS_AS(magnon::require_valid(params(1.0, 0.5, 1, 2)), std::invalid_argument);
  CHECK_NOTHROW(magnon::require_valid(params(0.0, 0.5, 9, 10)));
}

TEST_CASE("kicked-vs-free echo is one without kicks and decays with them") {
  const auto state = InitialState::unentangled(kHalf, kHalf);
  const auto p = params(1.0, 0.8, 1, 40);
  CHECK(magnon::echo_xy_vs_harper(state, p, 0, false) == doctest::Approx(1.0));
  const auto series = magnon::echo_xy_vs_harper_series(state, p, {0, 5, 20, 60}, false);
  REQUIRE(series.samples.size() == 4);
  CHECK(series.samples[0].second == doctest::Approx(1.0));
  CHECK(series.samples[3].second < 0.9);
  for (const auto& [t, value] : series.samples) {
    CHECK(value >= -1e-12);
    CHECK(value <= 1.0 + 1e-12);
  }
  // Vacuum weight only: kicks change nothing measurable up to a global phase
  // on the one-magnon line, so the echo sticks at 1.
  const auto vacuum = InitialState::unentangled(cplx(1.0, 0.0), cplx(0.0, 0.0));
  CHECK(magnon::echo_xy_vs_harper(vacuum, p, 25, false) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("averaged echo equals the closed-form weight average") {
  const auto state = InitialState::unentangled(kHalf, kHalf);
  const auto p = params(1.0, 0.3, 1, 25);
  // Recover S from two fixed-weight echoes and compare with the averaged
  // value (1 + Re S + |S|^2) / 3.
  const auto magnon_only = InitialState::unentangled(cplx(0.0, 0.0), cplx(1.0, 0.0));
  const int kicks = 12;
  const double s_abs2 = magnon::echo_xy_vs_harper(magnon_only, p, kicks, false);
  const double mixed = magnon::echo_xy_vs_harper(state, p, kicks, false);
  // mixed = |1/2 + S/2|^2 = 1/4 (1 + 2 Re S + |S|^2)
  const double re_s = (4.0 * mixed - 1.0 - s_abs2) / 2.0;
  const double expected = (1.0 + re_s + s_abs2) / 3.0;
  CHECK(magnon::echo_xy_vs_harper(state, p, kicks, true) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("entangled states are rejected by the kicked-model echoes") {
  const auto entangled = InitialState::entangled(kHalf, kHalf, 3);
  const auto p = params(1.0, 0.5, 1, 12);
  CHECK_THROWS_AS(magnon::echo_xy_vs_harper(entangled, p, 4, false), std::invalid_argument);
  CHECK_THROWS_AS(magnon::echo_harper_reverse(entangled, p, params(1.0, 0.25, 1, 12), 1.0),
                  std::invalid_argument);
}

TEST_CASE("single-event echo on the kicked background matches the ring limit at g = 0") {
  // With g = 0 and gap 0 the kicked background is the free ring, so the
  // composite-amplitude echo must match the ring echo at t0 = n tau.
  const auto state = InitialState::unentangled(kHalf, kHalf);
  const auto p = params(0.0, 0.5, 1, 16);
  const magnon::ChainSpec ring = magnon::ChainSpec::finite(16, 0.0, 0.0);
  for (int n : {1, 4, 9}) {
    for (int site : {1, 3}) {
      magnon::QdpEvent event;
      event.site = site;
      event.epoch = 0.5 * n;
      event.process = magnon::project_z();
      CHECK(magnon::echo_harper_qdp(state, p, magnon::project_z(), site, n) ==
            doctest::Approx(magnon::echo_incoherent(state, ring, event)).epsilon(1e-12));
    }
  }
}

TEST_CASE("qdp series abscissa is the event time") {
  const auto state = InitialState::unentangled(kHalf, kHalf);
  const auto p = params(1.0, 0.3, 1, 12);
  const auto series =
      magnon::echo_harper_qdp_series(state, p, magnon::project_z(), 1, {0, 2, 5});
  REQUIRE(series.samples.size() == 3);
  CHECK(series.samples[0].first == doctest::Approx(0.0));
  CHECK(series.samples[1].first == doctest::Approx(0.6));
  CHECK(series.samples[2].first == doctest::Approx(1.5));
  CHECK(series.samples[0].second ==
        doctest::Approx(magnon::echo_harper_qdp(state, p, magnon::project_z(), 1, 0)));
}

TEST_CASE("commensurate times of rational period ratios") {
  const auto points = magnon::commensurate_times(0.1, 0.2, 1.05);
  REQUIRE(points.size() == 5);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double t = 0.2 * static_cast<double>(i + 1);
    CHECK(points[i].t == doctest::Approx(t).epsilon(1e-12));
    CHECK(points[i].n1 == static_cast<long long>(2 * (i + 1)));
    CHECK(points[i].n2 == static_cast<long long>(i + 1));
  }
  const auto coarse = magnon::commensurate_times(0.3, 0.4, 2.5);
  REQUIRE(coarse.size() == 2);
  CHECK(coarse[0].t == doctest::Approx(1.2));
  CHECK(coarse[1].t == doctest::Approx(2.4));
  CHECK(coarse[0].n1 == 4);
  CHECK(coarse[0].n2 == 3);
  // An irrational ratio admits no common time below any modest horizon.
  CHECK(magnon::commensurate_times(1.0, std::numbers::pi, 10.0).empty());
}

TEST_CASE("identical forward and backward kicking is perfectly reversed") {
  const auto state = InitialState::unentangled(kHalf, kHalf);
  const auto p = params(1.0, 0.4, 1, 18);
  const auto series = magnon::echo_harper_reverse_series(state, p, p, 4.0);
  REQUIRE(!series.samples.empty());
  for (const auto& [t, value] : series.samples) {
    CHECK(value == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reverse echo rejects incommensurate times and mismatched backgrounds") {
  const auto state = InitialState::unentangled(kHalf, kHalf);
  const auto fwd = params(1.0, 0.3, 1, 12);
  const auto bwd = params(1.0, 0.4, 1, 12);
  CHECK_NOTHROW(magnon::echo_harper_reverse(state, fwd, bwd, 1.2));
  CHECK_THROWS_AS(magnon::echo_harper_reverse(state, fwd, bwd, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(
      magnon::echo_harper_reverse(state, fwd, params(2.0, 0.4, 1, 12), 1.2),
      std::invalid_argument);
  CHECK_THROWS_AS(
      magnon::echo_harper_reverse(state, fwd, params(1.0, 0.4, 2, 12), 1.2),
      std::invalid_argument);
}

TEST_CASE("participation measures") {
  Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(8, cplx(0.25, 0.25));
  CHECK(magnon::inverse_participation_ratio(uniform) == doctest::Approx(1.0 / 8.0));
  CHECK(magnon::participation_ratio(uniform) == doctest::Approx(8.0));
  Eigen::VectorXcd peaked = Eigen::VectorXcd::Zero(8);
  peaked(3) = cplx(0.0, 2.0);  // normalization is internal
  CHECK(magnon::inverse_participation_ratio(peaked) == doctest::Approx(1.0));
  CHECK_THROWS_AS(magnon::inverse_participation_ratio(Eigen::VectorXcd::Zero(4)),
                  std::invalid_argument);
}

TEST_CASE("stronger kicks localize the walker") {
  // Late-time inverse participation ratio of the composite amplitude column
  // grows (localization) as the kick strength increases through the
  // delocalized-to-localized crossover.
  const int kicks = 100;
  std::vector<double> ipr;
  for (double g : {0.1, 0.9, 5.0, 9.0}) {
    const auto column = magnon::harper_column(params(g, 0.1, 1, 200), kicks, 1);
    ipr.push_back(magnon::inverse_participation_ratio(column));
  }
  for (std::size_t i = 1; i < ipr.size(); ++i) {
    CHECK(ipr[i] >= ipr[i - 1]);
  }
}
