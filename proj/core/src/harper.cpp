#include "magnon/harper.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "magnon/errors.hpp"

namespace magnon {
namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kPauliTol = 1e-13;

void require_kicks(int kicks) {
  if (kicks < 0) {
    throw std::invalid_argument("harper: the kick count must be non-negative");
  }
}

void require_same_background(const HarperParams& a, const HarperParams& b) {
  if (a.g != b.g || a.eta != b.eta || a.size != b.size) {
    throw std::invalid_argument(
        "echo_harper_reverse: forward and backward evolutions must share g, eta, and N");
  }
}

// Incremental column evolution shared by the echo operations: col_{n+1} =
// diag(kick) * flight * col_n, with the free column advanced alongside.
struct ColumnWalker {
  Eigen::MatrixXcd flight;
  std::vector<cplx> kick;
  Eigen::VectorXcd kicked;
  Eigen::VectorXcd free;
  int kicks_done = 0;

  ColumnWalker(const HarperParams& params, int from) {
    const int n = params.size;
    flight = propagator_matrix(flight_chain(params), params.tau).amplitudes;
    kick = kick_phases(params);
    kicked = Eigen::VectorXcd::Zero(n);
    kicked(from - 1) = 1.0;
    free = kicked;
  }

  void step() {
    kicked = flight * kicked;
    for (int x = 0; x < kicked.size(); ++x) {
      kicked(x) *= kick[static_cast<std::size_t>(x)];
    }
    free = flight * free;
    ++kicks_done;
  }

  void advance_to(int kicks) {
    while (kicks_done < kicks) {
      step();
    }
  }
};

void require_increasing(const std::vector<int>& kick_counts) {
  int previous = -1;
  for (int n : kick_counts) {
    if (n < 0 || n <= previous) {
      throw std::invalid_argument("harper series: kick counts must be strictly increasing and >= 0");
    }
    previous = n;
  }
}

double averaged_overlap_echo(const cplx& overlap) {
  // Mean over u = |alpha|^2 uniform on [0,1] of |u + (1-u) S|^2
  // = 1/3 + Re(S)/3 + |S|^2/3.
  return (1.0 + overlap.real() + std::norm(overlap)) / 3.0;
}

double fixed_overlap_echo(const InitialState& state, const cplx& overlap) {
  return std::norm(std::norm(state.alpha()) + std::norm(state.beta()) * overlap);
}

// Kraus echo from the kicked-model amplitudes: the Pauli-decomposition form
// with gap-free composite amplitudes. col1/colr are the kicked columns from
// site 1 and (entangled only) from the partner site.
double kraus_echo_from_columns(const InitialState& state, const KrausChannel& channel, int m,
                               const Eigen::VectorXcd& col1, const Eigen::VectorXcd* colr) {
  const cplx g_m1 = col1(m - 1);
  double ez;
  cplx coherence;  // conj(alpha)*beta*G^m_1 for the unentangled variant
  if (state.is_entangled()) {
    const cplx k_m = state.alpha() * g_m1 + state.beta() * (*colr)(m - 1);
    ez = 1.0 - 2.0 * std::norm(k_m);
    coherence = 0.0;
  } else {
    ez = 1.0 - 2.0 * std::norm(state.beta() * g_m1);
    coherence = std::conj(state.alpha()) * state.beta() * g_m1;
  }
  double echo = 0.0;
  for (const auto& op : channel.operators) {
    const cplx c0 = 0.5 * (op(0, 0) + op(1, 1));
    const cplx cz = 0.5 * (op(0, 0) - op(1, 1));
    const cplx cx = 0.5 * (op(0, 1) + op(1, 0));
    const cplx cy = cplx(0.0, -0.5) * (op(1, 0) - op(0, 1));
    if (state.is_entangled() && std::abs(cy) > kPauliTol) {
      throw unsupported_analytically(
          "echo_harper_qdp: sigma^y component with an entangled state has no closed form; "
          "use the oracle");
    }
    const double ex = state.is_entangled() ? 0.0 : 2.0 * coherence.real();
    const double ey = state.is_entangled() ? 0.0 : 2.0 * coherence.imag();
    echo += std::norm(c0 + cz * ez + cx * ex + cy * ey);
  }
  if (!(echo >= -1e-10 && echo <= 1.0 + 1e-10)) {
    throw std::logic_error("echo_harper_qdp: computed value outside [0, 1]");
  }
  return echo;
}

}  // namespace

void require_valid(const HarperParams& params) {
  if (!(std::isfinite(params.g) && params.g >= 0.0)) {
    throw std::invalid_argument("HarperParams: g must be a finite real >= 0");
  }
  if (!(std::isfinite(params.tau) && params.tau > 0.0)) {
    throw std::invalid_argument("HarperParams: tau must be a finite real > 0");
  }
  if (params.size < 3) {
    throw std::invalid_argument("HarperParams: the ring needs at least 3 sites");
  }
  if (params.eta < 1 || params.eta > params.size - 1) {
    throw std::invalid_argument("HarperParams: eta must be an integer in 1..N-1");
  }
}

ChainSpec flight_chain(const HarperParams& params) {
  require_valid(params);
  return ChainSpec::finite(params.size, 0.0);
}

std::vector<std::complex<double>> kick_phases(const HarperParams& params) {
  require_valid(params);
  std::vector<cplx> phases(static_cast<std::size_t>(params.size));
  for (int x = 1; x <= params.size; ++x) {
    const double angle =
        2.0 * params.tau * params.g * std::cos(2.0 * kPi * params.eta * x / params.size);
    phases[static_cast<std::size_t>(x - 1)] = std::polar(1.0, angle);
  }
  return phases;
}

Propagator harper_step(const HarperParams& params) {
  Propagator step = propagator_matrix(flight_chain(params), params.tau);
  const std::vector<cplx> phases = kick_phases(params);
  for (int row = 0; row < step.size(); ++row) {
    step.amplitudes.row(row) *= phases[static_cast<std::size_t>(row)];
  }
  return step;
}

Propagator harper_green(const HarperParams& params, int kicks) {
  require_kicks(kicks);
  const Propagator step = harper_step(params);
  Propagator result{step.chain, params.tau * kicks,
                    Eigen::MatrixXcd::Identity(params.size, params.size)};
  for (int k = 0; k < kicks; ++k) {
    result.amplitudes = step.amplitudes * result.amplitudes;
  }
  return result;
}

Eigen::VectorXcd harper_column(const HarperParams& params, int kicks, int from) {
  require_kicks(kicks);
  require_valid(params);
  if (from < 1 || from > params.size) {
    throw std::invalid_argument("harper_column: source site out of range 1..N");
  }
  ColumnWalker walker(params, from);
  walker.advance_to(kicks);
  return walker.kicked;
}

double echo_xy_vs_harper(const InitialState& state, const HarperParams& params, int kicks,
                         bool averaged) {
  const std::vector<int> counts{kicks};
  return echo_xy_vs_harper_series(state, params, counts, averaged).samples.front().second;
}

EchoSeries echo_xy_vs_harper_series(const InitialState& state, const HarperParams& params,
                                    const std::vector<int>& kick_counts, bool averaged) {
  require_valid(params);
  require_increasing(kick_counts);
  if (state.is_entangled()) {
    throw std::invalid_argument("echo_xy_vs_harper: requires the unentangled state variant");
  }
  EchoSeries series;
  series.axis = SweepAxis::t;
  ColumnWalker walker(params, 1);
  for (int n : kick_counts) {
    walker.advance_to(n);
    const cplx overlap = walker.free.dot(walker.kicked);
    const double value =
        averaged ? averaged_overlap_echo(overlap) : fixed_overlap_echo(state, overlap);
    series.samples.emplace_back(params.tau * n, value);
  }
  check_echo_range(series);
  return series;
}

double echo_harper_qdp(const InitialState& state, const HarperParams& params,
                       const KrausChannel& channel, int m, int kicks) {
  const std::vector<int> counts{kicks};
  return echo_harper_qdp_series(state, params, channel, m, counts).samples.front().second;
}

EchoSeries echo_harper_qdp_series(const InitialState& state, const HarperParams& params,
                                  const KrausChannel& channel, int m,
                                  const std::vector<int>& kick_counts) {
  require_valid(params);
  require_increasing(kick_counts);
  if (channel.operators.empty()) {
    throw std::invalid_argument("echo_harper_qdp: channel has no operators");
  }
  if (m < 1 || m > params.size) {
    throw std::invalid_argument("echo_harper_qdp: site out of range 1..N");
  }
  if (state.is_entangled() &&
      (state.partner_site() < 1 || state.partner_site() > params.size)) {
    throw std::invalid_argument("echo_harper_qdp: entangled partner site out of range 1..N");
  }
  EchoSeries series;
  series.axis = SweepAxis::t0;
  ColumnWalker walker1(params, 1);
  std::optional<ColumnWalker> walker_r;
  if (state.is_entangled()) {
    walker_r.emplace(params, state.partner_site());
  }
  for (int n : kick_counts) {
    walker1.advance_to(n);
    const Eigen::VectorXcd* colr = nullptr;
    if (walker_r.has_value()) {
      walker_r->advance_to(n);
      colr = &walker_r->kicked;
    }
    series.samples.emplace_back(params.tau * n,
                                kraus_echo_from_columns(state, channel, m, walker1.kicked, colr));
  }
  check_echo_range(series);
  return series;
}

double echo_harper_reverse(const InitialState& state, const HarperParams& forward,
                           const HarperParams& backward, double t) {
  require_valid(forward);
  require_valid(backward);
  require_same_background(forward, backward);
  if (state.is_entangled()) {
    throw std::invalid_argument("echo_harper_reverse: requires the unentangled state variant");
  }
  if (!std::isfinite(t) || t <= 0.0) {
    throw std::invalid_argument("echo_harper_reverse: time must be a positive real");
  }
  const double tolerance = 1e-9 * std::max(1.0, std::abs(t));
  const auto count_for = [&](double tau) -> long long {
    const double ratio = t / tau;
    const long long n = std::llround(ratio);
    if (n < 1 || std::abs(static_cast<double>(n) * tau - t) > tolerance) {
      throw std::invalid_argument(
          "echo_harper_reverse: t is not a common multiple of the two kick periods");
    }
    return n;
  };
  const long long n1 = count_for(forward.tau);
  const long long n2 = count_for(backward.tau);

  ColumnWalker walker1(forward, 1);
  ColumnWalker walker2(backward, 1);
  walker1.advance_to(static_cast<int>(n1));
  walker2.advance_to(static_cast<int>(n2));
  const cplx overlap = walker2.kicked.dot(walker1.kicked);
  const double echo = fixed_overlap_echo(state, overlap);
  if (!(echo >= -1e-10 && echo <= 1.0 + 1e-10)) {
    throw std::logic_error("echo_harper_reverse: computed value outside [0, 1]");
  }
  return echo;
}

EchoSeries echo_harper_reverse_series(const InitialState& state, const HarperParams& forward,
                                      const HarperParams& backward, double t_max) {
  require_valid(forward);
  require_valid(backward);
  require_same_background(forward, backward);
  if (state.is_entangled()) {
    throw std::invalid_argument("echo_harper_reverse: requires the unentangled state variant");
  }
  const std::vector<CommensuratePoint> points =
      commensurate_times(forward.tau, backward.tau, t_max);
  EchoSeries series;
  series.axis = SweepAxis::t;
  ColumnWalker walker1(forward, 1);
  ColumnWalker walker2(backward, 1);
  for (const CommensuratePoint& point : points) {
    walker1.advance_to(static_cast<int>(point.n1));
    walker2.advance_to(static_cast<int>(point.n2));
    const cplx overlap = walker2.kicked.dot(walker1.kicked);
    series.samples.emplace_back(point.t, fixed_overlap_echo(state, overlap));
  }
  check_echo_range(series);
  return series;
}

std::vector<CommensuratePoint> commensurate_times(double tau1, double tau2, double t_max) {
  if (!(std::isfinite(tau1) && tau1 > 0.0) || !(std::isfinite(tau2) && tau2 > 0.0)) {
    throw std::invalid_argument("commensurate_times: kick periods must be positive reals");
  }
  if (!std::isfinite(t_max)) {
    throw std::invalid_argument("commensurate_times: t_max must be finite");
  }
  std::vector<CommensuratePoint> points;
  if (t_max <= 0.0) {
    return points;
  }
  // Continued-fraction reduction of tau1/tau2 to p/q with relative error
  // <= 1e-9; the fundamental common time is then q*tau1 (= p*tau2).
  const long double ratio = static_cast<long double>(tau1) / static_cast<long double>(tau2);
  long long p_prev = 0, q_prev = 1;
  long long p_cur = 1, q_cur = 0;
  long double rest = ratio;
  bool found = false;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a_f = std::floor(rest);
    if (a_f > 1e15L) {
      break;
    }
    const long long a = static_cast<long long>(a_f);
    const long long p_next = a * p_cur + p_prev;
    const long long q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    if (p_cur > 0 && q_cur > 0 &&
        std::fabs(ratio - static_cast<long double>(p_cur) / static_cast<long double>(q_cur)) <=
            1e-9L * ratio) {
      found = true;
      break;
    }
    const long double frac = rest - a_f;
    if (frac < 1e-15L) {
      break;
    }
    rest = 1.0L / frac;
    if (p_cur > (1LL << 40) || q_cur > (1LL << 40)) {
      break;
    }
  }
  if (!found) {
    // ratio == p_cur/q_cur exactly (terminating expansion) is also a match.
    if (p_cur > 0 && q_cur > 0 &&
        std::fabs(ratio - static_cast<long double>(p_cur) / static_cast<long double>(q_cur)) <=
            1e-9L * ratio) {
      found = true;
    }
  }
  if (!found) {
    return points;
  }
  // tau1/tau2 = p/q => q*tau1 = p*tau2: one fundamental period needs q kicks
  // of tau1 and p kicks of tau2.
  const long long kicks1 = q_cur;
  const long long kicks2 = p_cur;
  const double base = 0.5 * (static_cast<double>(kicks1) * tau1 +
                             static_cast<double>(kicks2) * tau2);
  for (long long k = 1;; ++k) {
    const double t = base * static_cast<double>(k);
    if (t > t_max * (1.0 + 1e-12)) {
      break;
    }
    points.push_back({t, k * kicks1, k * kicks2});
    if (points.size() > 2000000) {
      throw std::invalid_argument("commensurate_times: too many points below t_max");
    }
  }
  return points;
}

double inverse_participation_ratio(const Eigen::VectorXcd& amplitudes) {
  const double total = amplitudes.squaredNorm();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("inverse_participation_ratio: amplitudes must have nonzero norm");
  }
  double sum = 0.0;
  for (int x = 0; x < amplitudes.size(); ++x) {
    const double weight = std::norm(amplitudes(x)) / total;
    sum += weight * weight;
  }
  return sum;
}

double participation_ratio(const Eigen::VectorXcd& amplitudes) {
  return 1.0 / inverse_participation_ratio(amplitudes);
}

}  // namespace magnon
