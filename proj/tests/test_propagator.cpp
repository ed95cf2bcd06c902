#include <cmath>
#include <complex>
#include <stdexcept>

#include <doctest.h>
#include <Eigen/Dense>

#include <magnon/bessel.hpp>
#include <magnon/chain.hpp>
#include <magnon/propagator.hpp>
#include <magnon/state.hpp>

using magnon::ChainSpec;
using cplx = std::complex<double>;

TEST_CASE("finite-ring amplitude table is unitary and translation invariant") {
  for (int size : {3, 10, 257}) {
    for (double t : {0.0, 0.4, 3.9}) {
      const auto table = magnon::propagator_matrix(ChainSpec::finite(size, 1.0), t);
      CAPTURE(size);
      CAPTURE(t);
      CHECK(magnon::max_column_norm_deviation(table) <= 1e-12);
      CHECK(magnon::max_translation_invariance_deviation(table) <= 1e-12);
    }
  }
}

TEST_CASE("zero time gives the identity") {
  const auto table = magnon::propagator_matrix(ChainSpec::finite(12, 0.7), 0.0);
  CHECK((table.amplitudes - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(magnon::green_infinite(4, 4, 0.0) == cplx(1.0, 0.0));
  CHECK(std::abs(magnon::green_infinite(5, 4, 0.0)) == 0.0);
}

TEST_CASE("composition property: G(t1+t2) = G(t2) G(t1)") {
  const ChainSpec chain = ChainSpec::finite(64, 1.0);
  const double t1 = 1.3, t2 = 2.7;
  const auto g1 = magnon::propagator_matrix(chain, t1);
  const auto g2 = magnon::propagator_matrix(chain, t2);
  const auto g12 = magnon::propagator_matrix(chain, t1 + t2);
  CHECK((g2.amplitudes * g1.amplitudes - g12.amplitudes).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("large rings converge to the infinite-chain amplitudes") {
  const ChainSpec big = ChainSpec::finite(4000, 1.0);
  for (long long d : {0LL, 1LL, 5LL, 11LL}) {
    for (double t : {0.5, 5.0, 20.0}) {
      const cplx finite = magnon::green_finite(big, 1 + d, 1, t);
      const cplx infinite = magnon::green_infinite(1 + d, 1, t);
      CAPTURE(d);
      CAPTURE(t);
      CHECK(std::abs(finite - infinite) <= 1e-6);
    }
  }
}

TEST_CASE("infinite-chain amplitude is i^d J_d(2t)") {
  for (long long d : {0LL, 1LL, 2LL, 3LL, 7LL}) {
    for (double t : {0.3, 2.0, 9.0}) {
      const cplx unit(0.0, 1.0);
      const cplx expected =
          std::pow(unit, static_cast<double>(d)) * magnon::bessel_j(static_cast<int>(d), 2.0 * t);
      const cplx actual = magnon::green_infinite(1 + d, 1, t);
      CHECK(std::abs(actual - expected) <= 1e-13);
    }
  }
}

TEST_CASE("amplitudes decay like a Bessel tail at large separation") {
  // |G^{1+m}_1(t)| = |J_m(2t)| on the infinite chain; beyond the light cone
  // (m >> 2t) this is tiny. Checks |J_m(2t)| <= 1/sqrt(3) uniformly and decay
  // in m past the cone.
  for (int m : {1, 2, 3, 5, 8}) {
    for (double t = 5.0; t <= 50.0; t += 7.5) {
      if (t < m) {
        continue;
      }
      const double value = std::abs(magnon::green_infinite(1 + m, 1, t));
      CHECK(value <= 1.0 / std::sqrt(3.0) + 1e-12);
    }
  }
  const double inside = std::abs(magnon::green_infinite(1 + 10, 1, 2.0));
  const double outside = std::abs(magnon::green_infinite(1 + 40, 1, 2.0));
  CHECK(outside < 1e-12);
  CHECK(outside < inside);
}

TEST_CASE("ring periodicity: sites are identified mod N") {
  const ChainSpec chain = ChainSpec::finite(10, 1.0);
  const double t = 1.9;
  CHECK(std::abs(magnon::green_finite(chain, 13, 1, t) - magnon::green_finite(chain, 3, 1, t)) <=
        1e-15);
  CHECK(std::abs(magnon::green_finite(chain, 1, 1 - 10, t) -
                 magnon::green_finite(chain, 1, 1, t)) <= 1e-15);
}

TEST_CASE("dressed amplitude carries the configured phase rate") {
  const ChainSpec plain = ChainSpec::finite(20, 1.0);           // gap defaults to 2*Delta
  const ChainSpec shifted = ChainSpec::finite(20, 1.0, 0.75);   // explicit gap
  const double t = 2.3;
  const cplx bare = magnon::green_finite(plain, 4, 1, t);
  CHECK(std::abs(magnon::dressed_green(plain, 4, t) - std::polar(1.0, -2.0 * t) * bare) <= 1e-14);
  CHECK(std::abs(magnon::dressed_green(shifted, 4, t) - std::polar(1.0, -0.75 * t) * bare) <=
        1e-14);
}

TEST_CASE("entangled-state amplitude combination") {
  const ChainSpec chain = ChainSpec::finite(16, 1.0);
  const auto state = magnon::InitialState::entangled(cplx(0.6, 0.0), cplx(0.0, 0.8), 5);
  const double t = 1.1;
  const cplx expected = cplx(0.6, 0.0) * magnon::green_finite(chain, 3, 1, t) +
                        cplx(0.0, 0.8) * magnon::green_finite(chain, 3, 5, t);
  CHECK(std::abs(magnon::combined_k(state, chain, 3, t) - expected) <= 1e-14);
  const auto unent = magnon::InitialState::unentangled(cplx(1.0, 0.0), cplx(0.0, 0.0));
  CHECK_THROWS_AS(magnon::combined_k(unent, chain, 3, t), std::invalid_argument);
}

TEST_CASE("argument validation") {
  const ChainSpec inf = ChainSpec::infinite(1.0);
  CHECK_THROWS_AS(magnon::green_finite(inf, 1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(magnon::propagator_matrix(inf, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(magnon::green_infinite(1, 1, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(ChainSpec::finite(2, 1.0), std::invalid_argument);
}
