#include "magnon/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace magnon {
namespace {

Eigen::Matrix2cd identity2() { return Eigen::Matrix2cd::Identity(); }

Eigen::Matrix2cd sigma_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Eigen::Matrix2cd sigma_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

void require_probability(double p, const char* op_name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(op_name) + ": p must lie in [0, 1]");
  }
}

}  // namespace

KrausChannel phase_flip(double p) {
  require_probability(p, "phase_flip");
  KrausChannel ch;
  ch.label = ChannelLabel::phase_flip;
  ch.mixing = p;
  ch.operators = {std::sqrt(p) * identity2(), std::sqrt(1.0 - p) * sigma_z()};
  return ch;
}

KrausChannel bit_flip(double p) {
  require_probability(p, "bit_flip");
  KrausChannel ch;
  ch.label = ChannelLabel::bit_flip;
  ch.mixing = p;
  ch.operators = {std::sqrt(p) * identity2(), std::sqrt(1.0 - p) * sigma_x()};
  return ch;
}

KrausChannel project_z() {
  KrausChannel ch;
  ch.label = ChannelLabel::project_z;
  ch.operators = {0.5 * (identity2() + sigma_z()), 0.5 * (identity2() - sigma_z())};
  return ch;
}

KrausChannel project_x() {
  KrausChannel ch;
  ch.label = ChannelLabel::project_x;
  ch.operators = {0.5 * (identity2() + sigma_x()), 0.5 * (identity2() - sigma_x())};
  return ch;
}

KrausChannel custom_channel(std::vector<Eigen::Matrix2cd> operators) {
  if (operators.empty()) {
    throw std::invalid_argument("custom_channel: operator list must be non-empty");
  }
  KrausChannel ch;
  ch.label = ChannelLabel::custom;
  ch.operators = std::move(operators);
  const ChannelReport report = validate_channel(ch);
  if (!report.complete(1e-12)) {
    throw std::invalid_argument("custom_channel: completeness residual exceeds 1e-12");
  }
  return ch;
}

ChannelReport validate_channel(const KrausChannel& channel) {
  ChannelReport report;
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  report.operator_norms.reserve(channel.operators.size());
  for (const auto& op : channel.operators) {
    sum += op.adjoint() * op;
    report.operator_norms.push_back(op.norm());
  }
  report.completeness_residual = (sum - identity2()).cwiseAbs().maxCoeff();
  return report;
}

Eigen::Matrix2cd CoherentGate::matrix() const {
  Eigen::Matrix2cd m;
  m << gamma, -std::conj(delta), delta, std::conj(gamma);
  return m;
}

CoherentGate coherent_gate(std::complex<double> gamma, std::complex<double> delta) {
  const double norm_sq = std::norm(gamma) + std::norm(delta);
  if (!std::isfinite(norm_sq) || std::abs(norm_sq - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "coherent_gate: |gamma|^2 + |delta|^2 must equal 1 (within 1e-9)");
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  return CoherentGate{gamma * scale, delta * scale};
}

}  // namespace magnon
