#include <cmath>
#include <complex>
#include <stdexcept>

#include <doctest.h>
#include <Eigen/Dense>

#include <magnon/channels.hpp>

using cplx = std::complex<double>;

namespace {

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd z;
  z << 1.0, 0.0, 0.0, -1.0;
  return z;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd x;
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

}  // namespace

TEST_CASE("built-in channels are complete") {
  for (const auto& channel : {magnon::phase_flip(0.3), magnon::bit_flip(0.85),
                              magnon::project_z(), magnon::project_x()}) {
    const auto report = magnon::validate_channel(channel);
    CHECK(report.complete());
    CHECK(report.operator_norms.size() == channel.operators.size());
  }
}

TEST_CASE("flip channels have the stated operator content") {
  const auto pf = magnon::phase_flip(0.3);
  REQUIRE(pf.operators.size() == 2);
  CHECK((pf.operators[0] - std::sqrt(0.3) * Eigen::Matrix2cd::Identity()).norm() <= 1e-15);
  CHECK((pf.operators[1] - std::sqrt(0.7) * pauli_z()).norm() <= 1e-15);
  CHECK(pf.mixing == 0.3);

  const auto bf = magnon::bit_flip(0.6);
  REQUIRE(bf.operators.size() == 2);
  CHECK((bf.operators[0] - std::sqrt(0.6) * Eigen::Matrix2cd::Identity()).norm() <= 1e-15);
  CHECK((bf.operators[1] - std::sqrt(0.4) * pauli_x()).norm() <= 1e-15);
}

TEST_CASE("projective channels decompose the identity") {
  for (const auto& channel : {magnon::project_z(), magnon::project_x()}) {
    REQUIRE(channel.operators.size() == 2);
    for (const auto& op : channel.operators) {
      CHECK((op * op - op).norm() <= 1e-15);       // idempotent
      CHECK((op - op.adjoint()).norm() <= 1e-15);  // hermitian
    }
    CHECK((channel.operators[0] + channel.operators[1] - Eigen::Matrix2cd::Identity()).norm() <=
          1e-15);
    CHECK((channel.operators[0] * channel.operators[1]).norm() <= 1e-15);  // orthogonal
  }
  CHECK((magnon::project_z().operators[0] * pauli_z() - magnon::project_z().operators[0]).norm() <=
        1e-15);
  CHECK((magnon::project_x().operators[0] * pauli_x() - magnon::project_x().operators[0]).norm() <=
        1e-15);
}

TEST_CASE("mixing probability is range checked") {
  CHECK_THROWS_AS(magnon::phase_flip(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(magnon::phase_flip(1.01), std::invalid_argument);
  CHECK_THROWS_AS(magnon::bit_flip(2.0), std::invalid_argument);
  CHECK_NOTHROW(magnon::phase_flip(0.0));
  CHECK_NOTHROW(magnon::bit_flip(1.0));
}

TEST_CASE("custom channels are accepted only when complete") {
  std::vector<Eigen::Matrix2cd> ops = {std::sqrt(0.5) * Eigen::Matrix2cd::Identity(),
                                       std::sqrt(0.5) * pauli_x()};
  CHECK_NOTHROW(magnon::custom_channel(ops));
  ops[1] *= 0.9;
  CHECK_THROWS_AS(magnon::custom_channel(ops), std::invalid_argument);
  CHECK_THROWS_AS(magnon::custom_channel({}), std::invalid_argument);
}

TEST_CASE("coherent gate is the expected unitary") {
  const cplx gamma(0.6, 0.0), delta(0.0, 0.8);
  const auto gate = magnon::coherent_gate(gamma, delta);
  const Eigen::Matrix2cd m = gate.matrix();
  CHECK((m.adjoint() * m - Eigen::Matrix2cd::Identity()).norm() <= 1e-14);
  CHECK(m(0, 0) == gamma);
  CHECK(m(1, 0) == delta);
  CHECK(m(0, 1) == -std::conj(delta));
  CHECK(m(1, 1) == std::conj(gamma));
  CHECK(gate.gamma_imag() == 0.0);
}

TEST_CASE("gate amplitudes are renormalized within tolerance and rejected beyond") {
  const double scale = 1.0 + 4e-10;
  const auto gate = magnon::coherent_gate(cplx(scale * 0.6, 0.0), cplx(0.0, scale * 0.8));
  CHECK(std::abs(std::norm(gate.gamma) + std::norm(gate.delta) - 1.0) <= 1e-14);
  CHECK_THROWS_AS(magnon::coherent_gate(cplx(0.7, 0.0), cplx(0.8, 0.0)), std::invalid_argument);
}
