#include "magnon_cli/runner.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include <magnon/chain.hpp>
#include <magnon/channels.hpp>
#include <magnon/echo.hpp>
#include <magnon/harper.hpp>
#include <magnon/oracle.hpp>
#include <magnon/propagator.hpp>
#include <magnon/series.hpp>
#include <magnon/state.hpp>

#include "magnon_cli/parallel.hpp"

namespace magnon::cli {
namespace {

using cplx = std::complex<double>;

ChainSpec make_chain(const RunConfig& config) {
  if (config.infinite) {
    return config.gap ? ChainSpec::infinite(config.delta, *config.gap)
                      : ChainSpec::infinite(config.delta);
  }
  return config.gap ? ChainSpec::finite(config.size, config.delta, *config.gap)
                    : ChainSpec::finite(config.size, config.delta);
}

InitialState make_state(const RunConfig& config) {
  cplx alpha, beta;
  if (config.beta2.has_value()) {
    beta = std::sqrt(*config.beta2);
    alpha = std::sqrt(1.0 - *config.beta2);
  } else {
    alpha = cplx(config.alpha_re, config.alpha_im);
    beta = cplx(config.beta_re, config.beta_im);
  }
  return config.entangled ? InitialState::entangled(alpha, beta, config.partner)
                          : InitialState::unentangled(alpha, beta);
}

KrausChannel make_channel(const RunConfig& config) {
  if (config.channel == "phase-flip") {
    return phase_flip(config.p);
  }
  if (config.channel == "bit-flip") {
    return bit_flip(config.p);
  }
  if (config.channel == "project-z") {
    return project_z();
  }
  if (config.channel == "project-x") {
    return project_x();
  }
  throw usage_error("invalid value for channel: expected phase-flip, bit-flip, project-z, or "
                    "project-x");
}

CoherentGate make_gate(const RunConfig& config) {
  return coherent_gate(cplx(config.gamma_re, config.gamma_im),
                       cplx(config.gate_delta_re, config.gate_delta_im));
}

HarperParams make_harper(const RunConfig& config) {
  HarperParams params;
  params.g = config.g;
  params.tau = config.tau;
  params.eta = config.eta;
  params.size = config.size;
  return params;
}

CsvTable from_series(const EchoSeries& series, const RunConfig& config) {
  CsvTable table;
  table.config_comment = config_comment(config);
  table.columns = {std::string(axis_name(series.axis)), "L"};
  table.rows.reserve(series.samples.size());
  for (const auto& [x, value] : series.samples) {
    table.rows.push_back({x, value});
  }
  return table;
}

CsvTable run_echo_single(const RunConfig& config) {
  const ChainSpec chain = make_chain(config);
  const InitialState state = make_state(config);
  const KrausChannel channel = make_channel(config);
  const std::vector<double> epochs = config.t0_grid->points();
  CsvTable table;
  table.config_comment = config_comment(config);
  table.columns = {"t0", "L"};
  table.rows.resize(epochs.size());
  parallel_for(
      epochs.size(),
      [&](std::size_t i) {
        QdpEvent event;
        event.site = config.site;
        event.epoch = epochs[i];
        event.process = channel;
        table.rows[i] = {epochs[i], echo_incoherent(state, chain, event)};
      },
      config.threads);
  return table;
}

CsvTable run_echo_coherent(const RunConfig& config) {
  const ChainSpec chain = make_chain(config);
  const InitialState state = make_state(config);
  const CoherentGate gate = make_gate(config);
  const std::vector<double> epochs = config.t0_grid->points();
  CsvTable table;
  table.config_comment = config_comment(config);
  table.columns = {"t0", "L"};
  table.rows.resize(epochs.size());
  parallel_for(
      epochs.size(),
      [&](std::size_t i) {
        table.rows[i] = {epochs[i],
                         echo_coherent(state, chain, config.site, epochs[i], gate)};
      },
      config.threads);
  return table;
}

CsvTable run_echo_multi(const RunConfig& config) {
  const ChainSpec chain = make_chain(config);
  const InitialState state = make_state(config);
  if (config.amplitude) {
    const int order = config.order == 0 ? static_cast<int>(config.sites.size()) + 1
                                        : config.order;
    const std::vector<double> epochs = config.t0_grid->points();
    CsvTable table;
    table.config_comment = config_comment(config);
    table.columns = {"t0", "re_A", "im_A"};
    table.rows.resize(epochs.size());
    parallel_for(
        epochs.size(),
        [&](std::size_t i) {
          const std::vector<double> intervals(config.sites.size(), epochs[i]);
          const cplx amplitude =
              string_amplitude_truncated(chain, state, config.sites, intervals, order);
          table.rows[i] = {epochs[i], amplitude.real(), amplitude.imag()};
        },
        config.threads);
    return table;
  }
  QdpSequence sequence;
  sequence.spacing = config.spacing;
  sequence.sites = config.sites;
  sequence.process = make_channel(config);
  const EchoSeries series = config.order == 0
                                ? echo_multi_exact_z(state, chain, sequence)
                                : echo_multi_truncated(state, chain, sequence, config.order);
  return from_series(series, config);
}

CsvTable run_harper_green(const RunConfig& config) {
  const HarperParams params = make_harper(config);
  require_valid(params);
  const std::vector<int> counts = config.kicks_grid->int_points();
  const Propagator flight = propagator_matrix(flight_chain(params), params.tau);
  const std::vector<cplx> kick = kick_phases(params);
  Eigen::VectorXcd column = Eigen::VectorXcd::Zero(params.size);
  column(0) = 1.0;
  CsvTable table;
  table.config_comment = config_comment(config);
  table.columns = {"x", "n", "re", "im", "abs2"};
  table.rows.reserve(counts.size() * static_cast<std::size_t>(params.size));
  int done = 0;
  for (int n : counts) {
    for (; done < n; ++done) {
      column = (flight.amplitudes * column).eval();
      for (int x = 0; x < params.size; ++x) {
        column(x) *= kick[static_cast<std::size_t>(x)];
      }
    }
    for (int x = 1; x <= params.size; ++x) {
      const cplx value = column(x - 1);
      table.rows.push_back({static_cast<double>(x), static_cast<double>(n), value.real(),
                            value.imag(), std::norm(value)});
    }
  }
  return table;
}

CsvTable run_harper_echo(const RunConfig& config) {
  const EchoSeries series = echo_xy_vs_harper_series(
      make_state(config), make_harper(config), config.kicks_grid->int_points(), config.averaged);
  return from_series(series, config);
}

CsvTable run_harper_echo_qdp(const RunConfig& config) {
  const EchoSeries series =
      echo_harper_qdp_series(make_state(config), make_harper(config), make_channel(config),
                             config.site, config.kicks_grid->int_points());
  return from_series(series, config);
}

CsvTable run_harper_reverse(const RunConfig& config) {
  HarperParams backward = make_harper(config);
  backward.tau = config.tau_backward;
  const EchoSeries series = echo_harper_reverse_series(make_state(config), make_harper(config),
                                                       backward, config.t_max);
  return from_series(series, config);
}

CsvTable run_oracle(const RunConfig& config) {
  const InitialState state = make_state(config);
  const bool kicked = config.background == "kicked";
  const OracleSession session =
      kicked ? OracleSession(make_harper(config)) : OracleSession(make_chain(config));
  std::variant<KrausChannel, CoherentGate> process;
  if (!config.channel.empty()) {
    process = make_channel(config);
  } else {
    process = make_gate(config);
  }
  CsvTable table;
  table.config_comment = config_comment(config);
  if (config.sites.empty()) {
    const std::vector<double> epochs = config.t0_grid->points();
    table.columns = {"t0", "L"};
    table.rows.resize(epochs.size());
    parallel_for(
        epochs.size(),
        [&](std::size_t i) {
          QdpEvent event;
          event.site = config.site;
          event.epoch = epochs[i];
          event.process = process;
          table.rows[i] = {epochs[i], session.echo(state, {event}, epochs[i])};
        },
        config.threads);
    return table;
  }
  table.columns = {"n", "L"};
  table.rows.resize(config.sites.size());
  parallel_for(
      config.sites.size(),
      [&](std::size_t i) {
        std::vector<QdpEvent> events;
        events.reserve(i + 1);
        for (std::size_t j = 0; j <= i; ++j) {
          QdpEvent event;
          event.site = config.sites[j];
          event.epoch = config.spacing * static_cast<double>(j + 1);
          event.process = process;
          events.push_back(event);
        }
        table.rows[i] = {static_cast<double>(i + 1),
                         session.echo(state, events, config.spacing * static_cast<double>(i + 1))};
      },
      config.threads);
  return table;
}

}  // namespace

CsvTable run_scenario(const RunConfig& config) {
  validate(config);
  switch (config.scenario) {
    case Scenario::echo_single: return run_echo_single(config);
    case Scenario::echo_coherent: return run_echo_coherent(config);
    case Scenario::echo_multi: return run_echo_multi(config);
    case Scenario::harper_green: return run_harper_green(config);
    case Scenario::harper_echo: return run_harper_echo(config);
    case Scenario::harper_echo_qdp: return run_harper_echo_qdp(config);
    case Scenario::harper_reverse: return run_harper_reverse(config);
    case Scenario::oracle: return run_oracle(config);
  }
  throw usage_error("unknown scenario");
}

std::string output_path(const std::string& base, const std::string& label) {
  if (label.empty()) {
    return base;
  }
  const std::string suffix = ".csv";
  if (base.size() >= suffix.size() &&
      base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return base.substr(0, base.size() - suffix.size()) + "-" + label + suffix;
  }
  return base + "-" + label + suffix;
}

int run_main(int argc, const char* const* argv) {
  try {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const std::vector<LabeledConfig> runs = parse_config(args);
    if (runs.empty()) {
      return 0;  // --help
    }
    for (const LabeledConfig& labeled : runs) {
      const CsvTable table = run_scenario(labeled.config);
      const std::string path = output_path(labeled.config.output, labeled.label);
      write_csv(table, path);
      std::cout << "wrote " << path << " (" << table.rows.size() << " rows)" << std::endl;
    }
    return 0;
  } catch (const usage_error& error) {
    std::cerr << "usage error: " << error.what() << std::endl;
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << std::endl;
    return 1;
  }
}

}  // namespace magnon::cli
