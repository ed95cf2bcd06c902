#include "magnon/oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace magnon {
namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
// Branch-matrix budget for the Kraus unravelling (complex entries); about
// 256 MB. Beyond this, use the density-matrix path.
constexpr long long kMaxBranchEntries = 1LL << 24;

int checked_sites(int sites) {
  if (sites < 1 || sites > kMaxOracleSites) {
    throw std::invalid_argument("oracle: ring too large for the dense reference (N <= 12)");
  }
  return sites;
}

void require_site_in(int site, int sites, const char* who) {
  if (site < 1 || site > sites) {
    throw std::invalid_argument(std::string(who) + ": site out of range 1..N");
  }
}

// In-place m <- (op at site) * m for any column count (vectors, branch
// matrices, densities). Row pairs (i0, i1) differ only in the site's bit;
// bit clear = up = local basis index 0.
void left_apply(const Eigen::Matrix2cd& op, int site, Eigen::MatrixXcd& m) {
  const int bit = 1 << (site - 1);
  const int dim = static_cast<int>(m.rows());
  Eigen::RowVectorXcd r0(m.cols()), r1(m.cols());
  for (int i0 = 0; i0 < dim; ++i0) {
    if (i0 & bit) {
      continue;
    }
    const int i1 = i0 | bit;
    r0 = m.row(i0);
    r1 = m.row(i1);
    m.row(i0) = op(0, 0) * r0 + op(0, 1) * r1;
    m.row(i1) = op(1, 0) * r0 + op(1, 1) * r1;
  }
}

// In-place m <- m * (op at site)^dagger.
void right_apply_adjoint(const Eigen::Matrix2cd& op, int site, Eigen::MatrixXcd& m) {
  const int bit = 1 << (site - 1);
  const int dim = static_cast<int>(m.cols());
  Eigen::VectorXcd c0(m.rows()), c1(m.rows());
  for (int i0 = 0; i0 < dim; ++i0) {
    if (i0 & bit) {
      continue;
    }
    const int i1 = i0 | bit;
    c0 = m.col(i0);
    c1 = m.col(i1);
    m.col(i0) = std::conj(op(0, 0)) * c0 + std::conj(op(0, 1)) * c1;
    m.col(i1) = std::conj(op(1, 0)) * c0 + std::conj(op(1, 1)) * c1;
  }
}

const KrausChannel* channel_of(const QdpEvent& event) {
  return std::get_if<KrausChannel>(&event.process);
}

const CoherentGate* gate_of(const QdpEvent& event) {
  return std::get_if<CoherentGate>(&event.process);
}

long long kick_index(double time, double tau, const char* what) {
  const long long n = std::llround(time / tau);
  if (n < 0 || std::abs(static_cast<double>(n) * tau - time) > 1e-9 * std::max(1.0, time)) {
    throw std::invalid_argument(std::string("oracle: ") + what +
                                " must be a non-negative integer multiple of the kick period");
  }
  return n;
}

}  // namespace

double DenseOperator::hermiticity_residual() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

double DenseOperator::unitarity_residual() const {
  const Eigen::MatrixXcd gram = matrix.adjoint() * matrix;
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

DenseOperator build_xxz(const ChainSpec& chain) {
  if (!chain.is_finite()) {
    throw std::invalid_argument("build_xxz: requires a finite ring");
  }
  const int n = checked_sites(chain.num_sites());
  const int dim = 1 << n;
  const double delta = chain.anisotropy();
  DenseOperator h{n, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int s = 0; s < dim; ++s) {
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const bool bi = (s >> i) & 1;
      const bool bj = (s >> j) & 1;
      if (bi == bj) {
        h.matrix(s, s) += -0.5 * delta;
      } else {
        h.matrix(s, s) += 0.5 * delta;
        const int flipped = s ^ ((1 << i) | (1 << j));
        h.matrix(flipped, s) += -1.0;
      }
    }
  }
  return h;
}

DenseOperator build_floquet(const HarperParams& params) {
  require_valid(params);
  const int n = checked_sites(params.size);
  const int dim = 1 << n;
  const HamiltonianEvolver flight(build_xxz(ChainSpec::finite(n, 0.0)));
  DenseOperator u{n, flight.unitary(params.tau)};
  for (int s = 0; s < dim; ++s) {
    double zsum = 0.0;
    for (int x = 1; x <= n; ++x) {
      const double c = std::cos(2.0 * kPi * params.eta * x / n);
      zsum += ((s >> (x - 1)) & 1) ? -c : c;
    }
    u.matrix.row(s) *= std::polar(1.0, -params.tau * params.g * zsum);
  }
  return u;
}

DenseOperator embed_site_operator(const Eigen::Matrix2cd& op, int site, int sites) {
  checked_sites(sites);
  require_site_in(site, sites, "embed_site_operator");
  const int dim = 1 << sites;
  DenseOperator out{sites, Eigen::MatrixXcd::Zero(dim, dim)};
  const int bit = 1 << (site - 1);
  for (int i0 = 0; i0 < dim; ++i0) {
    if (i0 & bit) {
      continue;
    }
    const int i1 = i0 | bit;
    out.matrix(i0, i0) = op(0, 0);
    out.matrix(i0, i1) = op(0, 1);
    out.matrix(i1, i0) = op(1, 0);
    out.matrix(i1, i1) = op(1, 1);
  }
  return out;
}

Eigen::VectorXcd embed_state(const InitialState& state, int sites) {
  checked_sites(sites);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(1 << sites);
  if (state.is_entangled()) {
    require_site_in(state.partner_site(), sites, "embed_state");
    psi(1) = state.alpha();                               // magnon at site 1
    psi(1 << (state.partner_site() - 1)) = state.beta();  // magnon at site r
  } else {
    psi(0) = state.alpha();  // all-up reference state
    psi(1) = state.beta();   // magnon at site 1
  }
  return psi;
}

Eigen::VectorXcd apply_site_operator(const Eigen::Matrix2cd& op, int site,
                                     const Eigen::VectorXcd& psi) {
  const int dim = static_cast<int>(psi.size());
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("apply_site_operator: state dimension must be a power of two");
  }
  int sites = 0;
  while ((1 << sites) < dim) {
    ++sites;
  }
  require_site_in(site, sites, "apply_site_operator");
  Eigen::MatrixXcd m = psi;
  left_apply(op, site, m);
  return m.col(0);
}

Eigen::VectorXcd apply_gate(const Eigen::VectorXcd& psi, const CoherentGate& gate, int site) {
  return apply_site_operator(gate.matrix(), site, psi);
}

double FullDensity::trace_deviation() const { return std::abs(matrix.trace() - cplx(1.0)); }

double FullDensity::hermiticity_residual() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

FullDensity density_from_pure(const Eigen::VectorXcd& psi) {
  return FullDensity{psi * psi.adjoint()};
}

FullDensity evolve_density(const FullDensity& rho, const Eigen::MatrixXcd& unitary) {
  if (unitary.rows() != rho.matrix.rows()) {
    throw std::invalid_argument("evolve_density: dimension mismatch");
  }
  return FullDensity{unitary * rho.matrix * unitary.adjoint()};
}

FullDensity apply_kraus(const FullDensity& rho, const KrausChannel& channel, int site) {
  if (channel.operators.empty()) {
    throw std::invalid_argument("apply_kraus: channel has no operators");
  }
  const int dim = static_cast<int>(rho.matrix.rows());
  int sites = 0;
  while ((1 << sites) < dim) {
    ++sites;
  }
  require_site_in(site, sites, "apply_kraus");
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& op : channel.operators) {
    Eigen::MatrixXcd term = rho.matrix;
    left_apply(op, site, term);
    right_apply_adjoint(op, site, term);
    result += term;
  }
  return FullDensity{std::move(result)};
}

HamiltonianEvolver::HamiltonianEvolver(const DenseOperator& hamiltonian) {
  if (hamiltonian.hermiticity_residual() > 1e-10) {
    throw std::invalid_argument("HamiltonianEvolver: generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.matrix);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("HamiltonianEvolver: eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd HamiltonianEvolver::evolve(const Eigen::VectorXcd& psi, double t) const {
  if (psi.size() != eigenvectors_.rows()) {
    throw std::invalid_argument("HamiltonianEvolver: dimension mismatch");
  }
  Eigen::VectorXcd coef = eigenvectors_.adjoint() * psi;
  for (int k = 0; k < coef.size(); ++k) {
    coef(k) *= std::polar(1.0, -eigenvalues_(k) * t);
  }
  return eigenvectors_ * coef;
}

Eigen::MatrixXcd HamiltonianEvolver::unitary(double t) const {
  Eigen::MatrixXcd phased = eigenvectors_;
  for (int k = 0; k < eigenvalues_.size(); ++k) {
    phased.col(k) *= std::polar(1.0, -eigenvalues_(k) * t);
  }
  return phased * eigenvectors_.adjoint();
}

Eigen::MatrixXcd one_magnon_block(const DenseOperator& op) {
  const int n = op.sites;
  Eigen::MatrixXcd block(n, n);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      block(x - 1, y - 1) = op.matrix(1 << (x - 1), 1 << (y - 1));
    }
  }
  return block;
}

OracleSession::OracleSession(const ChainSpec& chain) {
  if (!chain.is_finite()) {
    throw std::invalid_argument("oracle: requires a finite ring");
  }
  sites_ = checked_sites(chain.num_sites());
  const DenseOperator h = build_xxz(chain);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("oracle: eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

OracleSession::OracleSession(const HarperParams& params) {
  require_valid(params);
  sites_ = checked_sites(params.size);
  kicked_ = true;
  tau_ = params.tau;
  floquet_ = build_floquet(params).matrix;
}

Eigen::VectorXcd OracleSession::evolve_state(const Eigen::VectorXcd& psi, double from,
                                             double to) const {
  Eigen::MatrixXcd block = psi;
  evolve_block(block, from, to);
  return block.col(0);
}

void OracleSession::evolve_block(Eigen::MatrixXcd& block, double from, double to) const {
  if (to < from) {
    throw std::invalid_argument("oracle: cannot evolve backwards in time");
  }
  if (kicked_) {
    const long long steps =
        kick_index(to, tau_, "readout time") - kick_index(from, tau_, "epoch");
    for (long long k = 0; k < steps; ++k) {
      block = floquet_ * block;
    }
    return;
  }
  const double dt = to - from;
  if (dt == 0.0) {
    return;
  }
  Eigen::MatrixXcd coef = eigenvectors_.adjoint() * block;
  for (int k = 0; k < coef.rows(); ++k) {
    coef.row(k) *= std::polar(1.0, -eigenvalues_(k) * dt);
  }
  block = eigenvectors_ * coef;
}

void OracleSession::check_events(const InitialState& state, const std::vector<QdpEvent>& events,
                                 double total_time) const {
  if (state.is_entangled()) {
    require_site_in(state.partner_site(), sites_, "oracle");
  }
  if (!std::isfinite(total_time) || total_time < 0.0) {
    throw std::invalid_argument("oracle: total time must be a finite non-negative real");
  }
  double previous = 0.0;
  for (const QdpEvent& event : events) {
    require_site_in(event.site, sites_, "oracle");
    if (!std::isfinite(event.epoch) || event.epoch < 0.0) {
      throw std::invalid_argument("oracle: event epochs must be finite non-negative reals");
    }
    if (event.epoch < previous) {
      throw std::invalid_argument("oracle: events must be ordered by epoch");
    }
    previous = event.epoch;
    if (const KrausChannel* channel = channel_of(event)) {
      if (channel->operators.empty()) {
        throw std::invalid_argument("oracle: channel has no operators");
      }
    }
    if (kicked_) {
      kick_index(event.epoch, tau_, "epoch");
    }
  }
  if (total_time < previous) {
    throw std::invalid_argument("oracle: total time must not precede the last event");
  }
  if (kicked_) {
    kick_index(total_time, tau_, "readout time");
  }
}

double OracleSession::echo(const InitialState& state, const std::vector<QdpEvent>& events,
                           double total_time) const {
  check_events(state, events, total_time);
  const Eigen::VectorXcd psi0 = embed_state(state, sites_);
  const int dim = 1 << sites_;

  Eigen::MatrixXcd branches = psi0;
  double clock = 0.0;
  for (const QdpEvent& event : events) {
    evolve_block(branches, clock, event.epoch);
    clock = event.epoch;
    if (const CoherentGate* gate = gate_of(event)) {
      left_apply(gate->matrix(), event.site, branches);
      continue;
    }
    const KrausChannel& channel = std::get<KrausChannel>(event.process);
    const long long ops = static_cast<long long>(channel.operators.size());
    if (ops * branches.cols() * dim > kMaxBranchEntries) {
      throw std::invalid_argument(
          "oracle: too many Kraus branches for dense unravelling; use echo_density");
    }
    Eigen::MatrixXcd split(dim, branches.cols() * ops);
    for (long long i = 0; i < ops; ++i) {
      Eigen::MatrixXcd piece = branches;
      left_apply(channel.operators[static_cast<std::size_t>(i)], event.site, piece);
      split.middleCols(i * branches.cols(), branches.cols()) = piece;
    }
    branches = std::move(split);
  }
  evolve_block(branches, clock, total_time);
  Eigen::VectorXcd reference = evolve_state(psi0, 0.0, total_time);
  const double echo_now = (branches.adjoint() * reference).squaredNorm();

  // The overlap must not change once every process has been applied: both
  // the processed branches and the clean reference see the same unitary.
  const double later = kicked_ ? tau_ : 0.37;
  evolve_block(branches, total_time, total_time + later);
  reference = evolve_state(reference, total_time, total_time + later);
  const double echo_later = (branches.adjoint() * reference).squaredNorm();
  if (std::abs(echo_now - echo_later) > 1e-10) {
    throw std::logic_error("oracle: echo depends on the readout time");
  }
  if (!(echo_now >= -1e-10 && echo_now <= 1.0 + 1e-10)) {
    throw std::logic_error("oracle: computed echo outside [0, 1]");
  }
  return echo_now;
}

double OracleSession::echo_density(const InitialState& state, const std::vector<QdpEvent>& events,
                                   double total_time) const {
  check_events(state, events, total_time);
  const Eigen::VectorXcd psi0 = embed_state(state, sites_);

  FullDensity rho = density_from_pure(psi0);
  double clock = 0.0;
  for (const QdpEvent& event : events) {
    Eigen::MatrixXcd block = rho.matrix;
    evolve_block(block, clock, event.epoch);
    Eigen::MatrixXcd adj = block.adjoint();
    evolve_block(adj, clock, event.epoch);
    rho.matrix = adj.adjoint();
    clock = event.epoch;
    if (const CoherentGate* gate = gate_of(event)) {
      left_apply(gate->matrix(), event.site, rho.matrix);
      right_apply_adjoint(gate->matrix(), event.site, rho.matrix);
    } else {
      rho = apply_kraus(rho, std::get<KrausChannel>(event.process), event.site);
    }
    if (rho.trace_deviation() > 1e-9) {
      throw std::logic_error("oracle: density trace drifted");
    }
  }
  Eigen::MatrixXcd block = rho.matrix;
  evolve_block(block, clock, total_time);
  Eigen::MatrixXcd adj = block.adjoint();
  evolve_block(adj, clock, total_time);
  rho.matrix = adj.adjoint();

  const Eigen::VectorXcd reference = evolve_state(psi0, 0.0, total_time);
  const cplx overlap = reference.dot(rho.matrix * reference);
  if (std::abs(overlap.imag()) > 1e-10) {
    throw std::logic_error("oracle: echo has a spurious imaginary part");
  }
  return overlap.real();
}

double oracle_echo(const OracleScenario& scenario) {
  if (const ChainSpec* chain = std::get_if<ChainSpec>(&scenario.background)) {
    return OracleSession(*chain).echo(scenario.state, scenario.events, scenario.total_time);
  }
  return OracleSession(std::get<HarperParams>(scenario.background))
      .echo(scenario.state, scenario.events, scenario.total_time);
}

}  // namespace magnon
