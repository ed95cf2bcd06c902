#include "magnon_cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <utility>

#include <CLI11.hpp>

namespace magnon::cli {
namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;
constexpr double kInvSqrt3 = 0.5773502691896258;

std::string fmt(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string fmt_sites(const std::vector<int>& sites) {
  std::string out;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (i > 0) {
      out.push_back(',');
    }
    out += std::to_string(sites[i]);
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& field, const std::string& requirement) {
  throw usage_error("invalid value for " + field + ": " + requirement);
}

void require_axis_absent(const RunConfig& config, bool t0, bool kicks, bool tmax) {
  const std::string name(scenario_name(config.scenario));
  if (!t0 && config.t0_grid.has_value()) {
    throw usage_error("--t0 does not apply to scenario " + name);
  }
  if (!kicks && config.kicks_grid.has_value()) {
    throw usage_error("--n does not apply to scenario " + name);
  }
  if (!tmax && config.t_max != 0.0) {
    throw usage_error("--t-max does not apply to scenario " + name);
  }
}

void require_t0(const RunConfig& config) {
  if (!config.t0_grid.has_value()) {
    throw usage_error("scenario " + std::string(scenario_name(config.scenario)) +
                      " sweeps the event epoch; pass --t0 start:stop:step");
  }
  config.t0_grid->points();  // validates the grid shape
}

void require_kicks(const RunConfig& config) {
  if (!config.kicks_grid.has_value()) {
    throw usage_error("scenario " + std::string(scenario_name(config.scenario)) +
                      " sweeps the kick count; pass --n start:stop:step");
  }
  const std::vector<int> counts = config.kicks_grid->int_points();
  if (counts.front() < 0) {
    bad_value("n", "kick counts must be >= 0");
  }
}

void require_finite_ring(const RunConfig& config) {
  if (config.infinite) {
    throw usage_error("scenario " + std::string(scenario_name(config.scenario)) +
                      " needs a finite ring (--N integer)");
  }
}

void require_kick_params(const RunConfig& config) {
  if (!(std::isfinite(config.tau) && config.tau > 0.0)) {
    bad_value("tau", "must be a finite real > 0");
  }
  if (!(std::isfinite(config.g) && config.g >= 0.0)) {
    bad_value("g", "must be a finite real >= 0");
  }
  if (config.eta < 1 || config.eta >= config.size) {
    bad_value("eta", "must be an integer in 1..N-1");
  }
}

void require_channel(const RunConfig& config) {
  if (config.channel.empty()) {
    throw usage_error("scenario " + std::string(scenario_name(config.scenario)) +
                      " needs --channel (phase-flip, bit-flip, project-z, or project-x)");
  }
}

void require_unentangled(const RunConfig& config) {
  if (config.entangled) {
    throw usage_error("scenario " + std::string(scenario_name(config.scenario)) +
                      " supports only the unentangled state variant");
  }
}

struct GivenFlags {
  bool alpha_or_beta = false;
  bool beta2 = false;
};

}  // namespace

std::string_view scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::echo_single: return "echo-single";
    case Scenario::echo_coherent: return "echo-coherent";
    case Scenario::echo_multi: return "echo-multi";
    case Scenario::harper_green: return "harper-green";
    case Scenario::harper_echo: return "harper-echo";
    case Scenario::harper_echo_qdp: return "harper-echo-qdp";
    case Scenario::harper_reverse: return "harper-reverse";
    case Scenario::oracle: return "oracle";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& text) {
  for (Scenario s : {Scenario::echo_single, Scenario::echo_coherent, Scenario::echo_multi,
                     Scenario::harper_green, Scenario::harper_echo, Scenario::harper_echo_qdp,
                     Scenario::harper_reverse, Scenario::oracle}) {
    if (text == scenario_name(s)) {
      return s;
    }
  }
  throw usage_error("unknown scenario '" + text +
                    "' (expected echo-single, echo-coherent, echo-multi, harper-green, "
                    "harper-echo, harper-echo-qdp, harper-reverse, or oracle)");
}

std::vector<double> Grid::points() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw usage_error("invalid grid: values must be finite");
  }
  if (single()) {
    return {start};
  }
  if (step <= 0.0) {
    throw usage_error("invalid grid: step must be > 0");
  }
  if (stop < start) {
    throw usage_error("invalid grid: stop must be >= start");
  }
  const double tol = 1e-12 * std::max({1.0, std::abs(start), std::abs(stop)});
  std::vector<double> out;
  for (long long k = 0;; ++k) {
    const double value = start + static_cast<double>(k) * step;
    if (value > stop + tol) {
      break;
    }
    out.push_back(value);
    if (out.size() > 50000000) {
      throw usage_error("invalid grid: too many points");
    }
  }
  if (out.empty()) {
    throw usage_error("invalid grid: no points");
  }
  return out;
}

std::vector<int> Grid::int_points() const {
  std::vector<int> out;
  for (double value : points()) {
    const double rounded = std::nearbyint(value);
    if (std::abs(value - rounded) > 1e-9 || std::abs(rounded) > 2147483000.0) {
      throw usage_error("invalid grid: expected integer points, got " + fmt(value));
    }
    out.push_back(static_cast<int>(rounded));
  }
  return out;
}

std::string Grid::text() const {
  if (single()) {
    return fmt(start);
  }
  return fmt(start) + ":" + fmt(stop) + ":" + fmt(step);
}

Grid parse_grid(const std::string& text) {
  const auto parse_number = [&](const std::string& piece) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw usage_error("invalid grid '" + text + "': expected start:stop:step or a number");
    }
    if (used != piece.size()) {
      throw usage_error("invalid grid '" + text + "': expected start:stop:step or a number");
    }
    return value;
  };
  Grid grid;
  const std::size_t first = text.find(':');
  if (first == std::string::npos) {
    grid.start = grid.stop = parse_number(text);
    grid.step = 0.0;
    return grid;
  }
  const std::size_t second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw usage_error("invalid grid '" + text + "': expected start:stop:step");
  }
  grid.start = parse_number(text.substr(0, first));
  grid.stop = parse_number(text.substr(first + 1, second - first - 1));
  grid.step = parse_number(text.substr(second + 1));
  if (grid.step <= 0.0) {
    throw usage_error("invalid grid '" + text + "': step must be > 0");
  }
  if (grid.stop < grid.start) {
    throw usage_error("invalid grid '" + text + "': stop must be >= start");
  }
  return grid;
}

void validate(const RunConfig& config) {
  if (!config.infinite && config.size < 3) {
    bad_value("N", "need an integer >= 3 or 'inf'");
  }
  if (config.infinite &&
      (config.scenario != Scenario::echo_single && config.scenario != Scenario::echo_coherent)) {
    require_finite_ring(config);
  }
  if (!std::isfinite(config.delta)) {
    bad_value("delta", "must be a finite real");
  }
  if (config.gap.has_value() && !std::isfinite(*config.gap)) {
    bad_value("gap", "must be a finite real");
  }
  if (config.beta2.has_value() && !(*config.beta2 >= 0.0 && *config.beta2 <= 1.0)) {
    bad_value("beta2", "must lie in [0, 1]");
  }
  if (!config.beta2.has_value()) {
    const double norm = config.alpha_re * config.alpha_re + config.alpha_im * config.alpha_im +
                        config.beta_re * config.beta_re + config.beta_im * config.beta_im;
    if (std::abs(norm - 1.0) > 1e-9) {
      throw usage_error(
          "invalid state amplitudes: |alpha|^2 + |beta|^2 must be 1 (use --beta2 or normalized "
          "--alpha-re/--alpha-im/--beta-re/--beta-im)");
    }
  }
  if (config.entangled) {
    if (config.partner < 2) {
      bad_value("r", "the entangled partner site must be an integer >= 2");
    }
    if (!config.infinite && config.partner > config.size) {
      bad_value("r", "the entangled partner site must not exceed N");
    }
  }
  if (!config.channel.empty() && config.channel != "phase-flip" && config.channel != "bit-flip" &&
      config.channel != "project-z" && config.channel != "project-x") {
    bad_value("channel", "expected phase-flip, bit-flip, project-z, or project-x");
  }
  if (!(config.p >= 0.0 && config.p <= 1.0)) {
    bad_value("p", "must lie in [0, 1]");
  }
  {
    const double norm = config.gamma_re * config.gamma_re + config.gamma_im * config.gamma_im +
                        config.gate_delta_re * config.gate_delta_re +
                        config.gate_delta_im * config.gate_delta_im;
    if (std::abs(norm - 1.0) > 1e-9) {
      throw usage_error("invalid gate amplitudes: |gamma|^2 + |delta|^2 must be 1");
    }
  }
  if (!config.infinite) {
    if (config.site < 1 || config.site > config.size) {
      bad_value("m", "event site out of range 1..N");
    }
    for (int site : config.sites) {
      if (site < 1 || site > config.size) {
        bad_value("sites", "site " + std::to_string(site) + " out of range 1..N");
      }
    }
  }
  if (config.order != 0 && config.order < 2) {
    bad_value("order", "need 0 (sector-exact) or an integer >= 2");
  }
  if (config.threads < 0) {
    bad_value("threads", "must be >= 0");
  }

  switch (config.scenario) {
    case Scenario::echo_single:
      require_channel(config);
      require_t0(config);
      require_axis_absent(config, true, false, false);
      break;
    case Scenario::echo_coherent:
      if (!config.channel.empty()) {
        throw usage_error("--channel does not apply to scenario echo-coherent (it takes the "
                          "gate amplitudes --gamma-re/--gamma-im/--delta-re/--delta-im)");
      }
      require_t0(config);
      require_axis_absent(config, true, false, false);
      break;
    case Scenario::echo_multi:
      require_finite_ring(config);
      if (config.sites.empty()) {
        throw usage_error("scenario echo-multi needs --sites m1,m2,...");
      }
      if (config.amplitude) {
        require_t0(config);
        require_axis_absent(config, true, false, false);
      } else {
        require_channel(config);
        if (!(std::isfinite(config.spacing) && config.spacing > 0.0)) {
          bad_value("spacing", "must be a finite real > 0");
        }
        require_axis_absent(config, false, false, false);
      }
      break;
    case Scenario::harper_green:
      require_finite_ring(config);
      require_kick_params(config);
      require_kicks(config);
      require_axis_absent(config, false, true, false);
      break;
    case Scenario::harper_echo:
      require_finite_ring(config);
      require_kick_params(config);
      require_unentangled(config);
      require_kicks(config);
      require_axis_absent(config, false, true, false);
      break;
    case Scenario::harper_echo_qdp:
      require_finite_ring(config);
      require_kick_params(config);
      require_channel(config);
      require_kicks(config);
      require_axis_absent(config, false, true, false);
      break;
    case Scenario::harper_reverse:
      require_finite_ring(config);
      require_kick_params(config);
      require_unentangled(config);
      if (!(std::isfinite(config.tau_backward) && config.tau_backward > 0.0)) {
        throw usage_error("scenario harper-reverse needs --tau2 > 0 (the backward kick period)");
      }
      if (!(std::isfinite(config.t_max) && config.t_max > 0.0)) {
        throw usage_error("scenario harper-reverse needs --t-max > 0");
      }
      require_axis_absent(config, false, false, true);
      break;
    case Scenario::oracle:
      require_finite_ring(config);
      if (config.size > 12) {
        bad_value("N", "the dense reference needs N <= 12");
      }
      if (config.background != "ring" && config.background != "kicked") {
        bad_value("background", "expected ring or kicked");
      }
      if (config.background == "kicked") {
        require_kick_params(config);
      }
      if (config.sites.empty()) {
        require_t0(config);
        require_axis_absent(config, true, false, false);
      } else {
        if (!(std::isfinite(config.spacing) && config.spacing > 0.0)) {
          bad_value("spacing", "must be a finite real > 0");
        }
        require_axis_absent(config, false, false, false);
      }
      break;
  }
}

std::string config_comment(const RunConfig& config) {
  const RunConfig defaults;
  std::vector<std::pair<std::string, std::string>> entries;
  const auto add = [&](const std::string& key, const std::string& value, bool include) {
    if (include) {
      entries.emplace_back(key, value);
    }
  };
  add("scenario", std::string(scenario_name(config.scenario)), true);
  add("N", config.infinite ? "inf" : std::to_string(config.size),
      config.infinite || config.size != defaults.size);
  add("delta", fmt(config.delta), config.delta != defaults.delta);
  add("gap", config.gap ? fmt(*config.gap) : "", config.gap.has_value());
  add("g", fmt(config.g), config.g != defaults.g);
  add("tau", fmt(config.tau), config.tau != defaults.tau);
  add("tau2", fmt(config.tau_backward), config.tau_backward != defaults.tau_backward);
  add("eta", std::to_string(config.eta), config.eta != defaults.eta);
  add("background", config.background, config.background != defaults.background);
  add("state", config.entangled ? "entangled" : "unentangled", config.entangled);
  if (config.beta2.has_value()) {
    add("beta2", fmt(*config.beta2), true);
  } else {
    add("alpha-re", fmt(config.alpha_re), config.alpha_re != defaults.alpha_re);
    add("alpha-im", fmt(config.alpha_im), config.alpha_im != defaults.alpha_im);
    add("beta-re", fmt(config.beta_re), config.beta_re != defaults.beta_re);
    add("beta-im", fmt(config.beta_im), config.beta_im != defaults.beta_im);
  }
  add("r", std::to_string(config.partner),
      config.entangled && config.partner != defaults.partner);
  add("channel", config.channel, !config.channel.empty());
  add("p", fmt(config.p),
      config.p != defaults.p && (config.channel == "phase-flip" || config.channel == "bit-flip"));
  const bool gate_used = config.scenario == Scenario::echo_coherent ||
                         (config.scenario == Scenario::oracle && config.channel.empty());
  add("gamma-re", fmt(config.gamma_re), gate_used && config.gamma_re != defaults.gamma_re);
  add("gamma-im", fmt(config.gamma_im), gate_used && config.gamma_im != defaults.gamma_im);
  add("delta-re", fmt(config.gate_delta_re),
      gate_used && config.gate_delta_re != defaults.gate_delta_re);
  add("delta-im", fmt(config.gate_delta_im),
      gate_used && config.gate_delta_im != defaults.gate_delta_im);
  add("m", std::to_string(config.site), config.site != defaults.site);
  add("sites", fmt_sites(config.sites), !config.sites.empty());
  add("spacing", fmt(config.spacing), config.spacing != defaults.spacing);
  add("order", std::to_string(config.order), config.order != defaults.order);
  add("amplitude", "true", config.amplitude);
  add("t0", config.t0_grid ? config.t0_grid->text() : "", config.t0_grid.has_value());
  add("n", config.kicks_grid ? config.kicks_grid->text() : "", config.kicks_grid.has_value());
  add("t-max", fmt(config.t_max), config.t_max != defaults.t_max);
  add("averaged", "true", config.averaged);

  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) {
      out.push_back(' ');
    }
    out += entries[i].first;
    out.push_back('=');
    out += entries[i].second;
  }
  return out;
}

namespace {

RunConfig base_config(Scenario scenario) {
  RunConfig config;
  config.scenario = scenario;
  return config;
}

std::string short_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

Grid kick_range(double tau, double t_final) {
  Grid grid;
  grid.start = 0.0;
  grid.stop = std::floor(t_final / tau + 1e-9);
  grid.step = 1.0;
  return grid;
}

std::vector<LabeledConfig> preset_fig1a() {
  std::vector<LabeledConfig> out;
  for (const char* channel : {"project-z", "project-x"}) {
    for (bool entangled : {false, true}) {
      RunConfig c = base_config(Scenario::echo_single);
      c.channel = channel;
      c.entangled = entangled;
      c.site = 1;
      c.t0_grid = parse_grid("0:5:0.05");
      c.output = "fig1a.csv";
      const std::string tag = channel[8] == 'z' ? "pz" : "px";
      out.push_back({tag + std::string(entangled ? "-ent" : "-unent"), c});
    }
  }
  return out;
}

std::vector<LabeledConfig> preset_fig1b() {
  std::vector<LabeledConfig> out;
  for (int order : {2, 3, 4}) {
    RunConfig c = base_config(Scenario::echo_multi);
    c.amplitude = true;
    c.sites = {1, 2, 3};
    c.order = order;
    c.t0_grid = parse_grid("0:5:0.05");
    c.output = "fig1b.csv";
    out.push_back({"k" + std::to_string(order), c});
  }
  return out;
}

std::vector<LabeledConfig> preset_fig1c() {
  std::vector<LabeledConfig> out;
  for (double spacing : {0.1, 0.5, 1.0, 5.0}) {
    RunConfig c = base_config(Scenario::echo_multi);
    c.channel = "project-z";
    // Fixed representative draw of sites in 1..9 (kept deterministic so the
    // output is reproducible).
    c.sites = {3, 1, 6, 9, 4, 7, 2, 8, 5, 3};
    c.order = 2;
    c.spacing = spacing;
    c.output = "fig1c.csv";
    out.push_back({"t0-" + short_number(spacing), c});
  }
  return out;
}

std::vector<LabeledConfig> preset_fig1d() {
  std::vector<LabeledConfig> out;
  for (bool entangled : {false, true}) {
    RunConfig c = base_config(Scenario::echo_coherent);
    c.entangled = entangled;
    c.site = 1;
    c.t0_grid = parse_grid("0:5:0.05");
    c.output = "fig1d.csv";
    out.push_back({entangled ? "ent" : "unent", c});
  }
  return out;
}

std::vector<LabeledConfig> preset_fig2() {
  std::vector<LabeledConfig> out;
  const auto add = [&](double tau, double g) {
    RunConfig c = base_config(Scenario::harper_green);
    c.size = 200;
    c.tau = tau;
    c.g = g;
    c.kicks_grid = kick_range(tau, 50.0);
    c.output = "fig2.csv";
    out.push_back({"tau" + short_number(tau) + "-g" + short_number(g), c});
  };
  for (double tau : {0.1, 0.9}) {
    for (double g : {0.1, 1.0, 5.0}) {
      add(tau, g);
    }
  }
  add(0.1, 0.0);  // free-flight reference panel
  return out;
}

std::vector<LabeledConfig> preset_fig3() {
  std::vector<LabeledConfig> out;
  for (double tau : {0.1, 0.3, 0.8}) {
    for (double g : {0.1, 1.0}) {
      for (int size : {10, 1000}) {
        RunConfig c = base_config(Scenario::harper_echo);
        c.size = size;
        c.tau = tau;
        c.g = g;
        c.kicks_grid = kick_range(tau, 50.0);
        c.output = "fig3.csv";
        out.push_back({"tau" + short_number(tau) + "-g" + short_number(g) + "-N" +
                           std::to_string(size),
                       c});
      }
    }
  }
  return out;
}

std::vector<LabeledConfig> preset_fig4() {
  // Pairs projective measurements along z and along x at g=1, m=1. At late
  // times the z-projector echo returns to one while the x-projector echo
  // settles at one half; the four kick periods span the regular-to-chaotic
  // range. The same survey is sometimes quoted with both panels labelled z,
  // which this pairing deliberately does not follow.
  std::vector<LabeledConfig> out;
  for (const char* channel : {"project-z", "project-x"}) {
    for (double tau : {0.1, 0.3, 0.8, 0.9}) {
      RunConfig c = base_config(Scenario::harper_echo_qdp);
      c.size = 1000;
      c.tau = tau;
      c.g = 1.0;
      c.site = 1;
      c.channel = channel;
      c.kicks_grid = kick_range(tau, 50.0);
      c.output = "fig4.csv";
      const std::string tag = channel[8] == 'z' ? "pz" : "px";
      out.push_back({tag + "-tau" + short_number(tau), c});
    }
  }
  return out;
}

std::vector<LabeledConfig> preset_fig5() {
  std::vector<LabeledConfig> out;
  const double forward[] = {0.1, 0.3, 0.8, 0.1, 0.1};
  const double backward[] = {0.2, 0.4, 0.9, 0.4, 0.9};
  for (int i = 0; i < 5; ++i) {
    RunConfig c = base_config(Scenario::harper_reverse);
    c.size = 1000;
    c.g = 1.0;
    c.tau = forward[i];
    c.tau_backward = backward[i];
    c.t_max = 50.0;
    c.output = "fig5.csv";
    out.push_back({"tau" + short_number(forward[i]) + "-" + short_number(backward[i]), c});
  }
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1a", "fig1b", "fig1c", "fig1d", "fig2", "fig3", "fig4", "fig5"};
}

std::vector<LabeledConfig> preset(const std::string& name) {
  std::vector<LabeledConfig> out;
  if (name == "fig1a") {
    out = preset_fig1a();
  } else if (name == "fig1b") {
    out = preset_fig1b();
  } else if (name == "fig1c") {
    out = preset_fig1c();
  } else if (name == "fig1d") {
    out = preset_fig1d();
  } else if (name == "fig2") {
    out = preset_fig2();
  } else if (name == "fig3") {
    out = preset_fig3();
  } else if (name == "fig4") {
    out = preset_fig4();
  } else if (name == "fig5") {
    out = preset_fig5();
  } else {
    throw usage_error("unknown preset '" + name +
                      "' (expected fig1a, fig1b, fig1c, fig1d, fig2, fig3, fig4, or fig5)");
  }
  for (const LabeledConfig& labeled : out) {
    validate(labeled.config);
  }
  return out;
}

std::vector<LabeledConfig> parse_config(const std::vector<std::string>& args) {
  CLI::App app{
      "magnon-echo: Loschmidt echoes of local processes interrupting spin-ring dynamics.\n"
      "Computes overlap echoes for single/sequential Kraus channels and coherent gates on\n"
      "the anisotropic ring (analytic one-magnon propagators, finite or infinite), for the\n"
      "periodically kicked ring (composite propagators), and against a dense small-ring\n"
      "reference."};
  app.name("magnon-echo");
  app.get_formatter()->column_width(30);

  std::string scenario_text, preset_text, size_text = "1000", state_text = "unentangled";
  std::string channel_text, background_text = "ring", t0_text, kicks_text, output_text;
  std::string sites_text;
  double delta = 1.0, gap = 0.0, g = 1.0, tau = 0.1, tau2 = 0.0, p = 0.5;
  double alpha_re = kInvSqrt2, alpha_im = 0.0, beta_re = kInvSqrt2, beta_im = 0.0, beta2 = 0.5;
  double gamma_re = kInvSqrt3, gamma_im = kInvSqrt3, delta_re = kInvSqrt3, delta_im = 0.0;
  double spacing = 1.0, t_max = 0.0;
  int eta = 1, partner = 5, site = 1, order = 0, threads = 0;
  bool averaged = false, amplitude = false;

  auto* o_scenario = app.add_option("--scenario", scenario_text,
                                    "echo-single | echo-coherent | echo-multi | harper-green | "
                                    "harper-echo | harper-echo-qdp | harper-reverse | oracle");
  auto* o_preset = app.add_option("--preset", preset_text,
                                  "named bundle: fig1a fig1b fig1c fig1d fig2 fig3 fig4 fig5");
  app.set_config("--config", "", "INI run file (key = value, # comments); flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);

  auto* o_size = app.add_option("--N", size_text, "ring size, or 'inf' for the infinite chain");
  auto* o_delta = app.add_option("--delta", delta, "ring z-z anisotropy [1]");
  auto* o_gap = app.add_option("--gap", gap, "zero<->one-magnon phase rate [2*delta]");
  auto* o_g = app.add_option("--g", g, "kick strength [1]");
  auto* o_tau = app.add_option("--tau", tau, "kick period [0.1]");
  auto* o_tau2 = app.add_option("--tau2", tau2, "backward kick period (harper-reverse)");
  auto* o_eta = app.add_option("--eta", eta, "integer kick flux in 1..N-1 [1]");
  auto* o_background =
      app.add_option("--background", background_text, "oracle backdrop: ring | kicked [ring]");

  auto* o_state = app.add_option("--state", state_text, "unentangled | entangled");
  auto* o_alpha_re = app.add_option("--alpha-re", alpha_re, "Re alpha [1/sqrt2]");
  auto* o_alpha_im = app.add_option("--alpha-im", alpha_im, "Im alpha [0]");
  auto* o_beta_re = app.add_option("--beta-re", beta_re, "Re beta [1/sqrt2]");
  auto* o_beta_im = app.add_option("--beta-im", beta_im, "Im beta [0]");
  auto* o_beta2 =
      app.add_option("--beta2", beta2, "set |beta|^2 with real amplitudes (overrides the four)");
  auto* o_partner = app.add_option("--r", partner, "entangled partner site [5]");

  auto* o_channel = app.add_option(
      "--channel", channel_text, "phase-flip | bit-flip | project-z | project-x");
  auto* o_p = app.add_option("--p", p, "mixing probability of phase-flip / bit-flip [0.5]");
  auto* o_gamma_re = app.add_option("--gamma-re", gamma_re, "Re gamma of the gate [1/sqrt3]");
  auto* o_gamma_im = app.add_option("--gamma-im", gamma_im, "Im gamma of the gate [1/sqrt3]");
  auto* o_delta_re = app.add_option("--delta-re", delta_re, "Re delta of the gate [1/sqrt3]");
  auto* o_delta_im = app.add_option("--delta-im", delta_im, "Im delta of the gate [0]");
  auto* o_site = app.add_option("--m", site, "event site [1]");
  auto* o_sites =
      app.add_option("--sites", sites_text, "comma-separated event sites (sequences)");
  auto* o_spacing = app.add_option("--spacing", spacing, "time between sequence events [1]");
  auto* o_order =
      app.add_option("--order", order, "sequence truncation order; 0 = sector-exact [0]");
  auto* o_amplitude = app.add_flag(
      "--amplitude", amplitude,
      "echo-multi: emit Re of the bare event-string amplitude vs --t0 instead of the echo");

  auto* o_t0 = app.add_option("--t0", t0_text, "epoch grid start:stop:step (or one value)");
  auto* o_kicks = app.add_option("--n", kicks_text, "kick-count grid start:stop:step");
  auto* o_t_max = app.add_option("--t-max", t_max, "largest common time (harper-reverse)");
  auto* o_averaged = app.add_flag("--averaged", averaged,
                                  "harper-echo: average the echo over the initial-state weight");

  auto* o_output = app.add_option("-o,--output", output_text,
                                  "output CSV path; multi-curve runs write <stem>-<label>.csv");
  auto* o_threads = app.add_option("--threads", threads,
                                   "worker threads [MAGNON_ECHO_THREADS or hardware]");

  app.footer(
      "Grids are inclusive: 0:5:0.25 yields 0, 0.25, ..., 5. Complex amplitudes are entered\n"
      "as separate real/imaginary flags. The environment variable MAGNON_ECHO_THREADS caps\n"
      "the worker pool. Exit status: 0 success, 2 usage error, 1 runtime error.");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& help) {
    std::cout << app.help();
    return {};
  } catch (const CLI::ParseError& error) {
    throw usage_error(error.what());
  }

  if (o_scenario->count() > 0 && o_preset->count() > 0) {
    throw usage_error("pass either --scenario or --preset, not both");
  }
  if (o_scenario->count() == 0 && o_preset->count() == 0) {
    throw usage_error("missing --scenario (or --preset): nothing to run; see --help");
  }
  if (o_beta2->count() > 0 &&
      (o_alpha_re->count() || o_alpha_im->count() || o_beta_re->count() || o_beta_im->count())) {
    throw usage_error("pass either --beta2 or explicit --alpha-re/--alpha-im/--beta-re/--beta-im, "
                      "not both");
  }

  // Overlay of every given flag onto a config (defaults or a preset entry).
  const auto overlay = [&](RunConfig& config) {
    if (o_size->count()) {
      if (size_text == "inf" || size_text == "infinite") {
        config.infinite = true;
      } else {
        try {
          std::size_t used = 0;
          config.size = std::stoi(size_text, &used);
          if (used != size_text.size()) {
            throw std::invalid_argument(size_text);
          }
        } catch (const std::exception&) {
          bad_value("N", "need an integer >= 3 or 'inf'");
        }
        config.infinite = false;
      }
    }
    if (o_delta->count()) config.delta = delta;
    if (o_gap->count()) config.gap = gap;
    if (o_g->count()) config.g = g;
    if (o_tau->count()) config.tau = tau;
    if (o_tau2->count()) config.tau_backward = tau2;
    if (o_eta->count()) config.eta = eta;
    if (o_background->count()) config.background = background_text;
    if (o_state->count()) {
      if (state_text == "unentangled") {
        config.entangled = false;
      } else if (state_text == "entangled") {
        config.entangled = true;
      } else {
        bad_value("state", "expected unentangled or entangled");
      }
    }
    if (o_alpha_re->count()) config.alpha_re = alpha_re;
    if (o_alpha_im->count()) config.alpha_im = alpha_im;
    if (o_beta_re->count()) config.beta_re = beta_re;
    if (o_beta_im->count()) config.beta_im = beta_im;
    if (o_beta2->count()) config.beta2 = beta2;
    if (o_partner->count()) config.partner = partner;
    if (o_channel->count()) config.channel = channel_text;
    if (o_p->count()) config.p = p;
    if (o_gamma_re->count()) config.gamma_re = gamma_re;
    if (o_gamma_im->count()) config.gamma_im = gamma_im;
    if (o_delta_re->count()) config.gate_delta_re = delta_re;
    if (o_delta_im->count()) config.gate_delta_im = delta_im;
    if (o_site->count()) config.site = site;
    if (o_sites->count()) {
      config.sites.clear();
      std::vector<std::string> pieces;
      std::size_t begin = 0;
      while (true) {
        const std::size_t comma = sites_text.find(',', begin);
        pieces.push_back(sites_text.substr(begin, comma - begin));
        if (comma == std::string::npos) {
          break;
        }
        begin = comma + 1;
      }
      for (const std::string& piece : pieces) {
        try {
          std::size_t used = 0;
          config.sites.push_back(std::stoi(piece, &used));
          if (used != piece.size()) {
            throw std::invalid_argument(piece);
          }
        } catch (const std::exception&) {
          bad_value("sites", "expected comma-separated integers, got '" + piece + "'");
        }
      }
    }
    if (o_spacing->count()) config.spacing = spacing;
    if (o_order->count()) config.order = order;
    if (o_amplitude->count()) config.amplitude = amplitude;
    if (o_t0->count()) config.t0_grid = parse_grid(t0_text);
    if (o_kicks->count()) config.kicks_grid = parse_grid(kicks_text);
    if (o_t_max->count()) config.t_max = t_max;
    if (o_averaged->count()) config.averaged = averaged;
    if (o_output->count()) config.output = output_text;
    if (o_threads->count()) config.threads = threads;
  };

  std::vector<LabeledConfig> runs;
  if (o_preset->count() > 0) {
    runs = preset(preset_text);
    for (LabeledConfig& labeled : runs) {
      overlay(labeled.config);
    }
  } else {
    RunConfig config;
    config.scenario = parse_scenario(scenario_text);
    overlay(config);
    runs.push_back({"", config});
  }
  for (const LabeledConfig& labeled : runs) {
    validate(labeled.config);
  }
  return runs;
}

}  // namespace magnon::cli
