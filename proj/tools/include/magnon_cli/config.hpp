#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace magnon::cli {

// Malformed command line, config file, or parameter range: the driver prints
// the message and exits with status 2.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario {
  echo_single,     // one Kraus event on the ring, L vs epoch t0
  echo_coherent,   // one unitary gate on the ring, L vs epoch t0
  echo_multi,      // equally spaced event sequence on the ring, L vs count n
  harper_green,    // kicked-ring propagator column dump, rows (x, n, re, im, abs2)
  harper_echo,     // kicked vs free evolution overlap echo, L vs time
  harper_echo_qdp, // one Kraus event during kicked evolution, L vs epoch n0*tau
  harper_reverse,  // kicked evolution against a second kick period, L vs time
  oracle,          // dense full-space reference for any of the above, small N
};

std::string_view scenario_name(Scenario scenario);
Scenario parse_scenario(const std::string& text);

// Inclusive sweep grid "start:stop:step" (endpoints included within a 1e-12
// relative tolerance) or a single value "x".
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;  // 0 => single point

  bool single() const { return step == 0.0; }
  std::vector<double> points() const;
  // Integer grid (kick counts, event counts): every point must sit within
  // 1e-9 of an integer.
  std::vector<int> int_points() const;
  std::string text() const;
};
Grid parse_grid(const std::string& text);

// One complete run description. Defaults reproduce the conventions used
// throughout: ring anisotropy 1, state (|F> + |1>)/sqrt(2), gate
// (gamma, delta) = ((1+i)/sqrt(3), 1/sqrt(3)), kick flux eta = 1.
struct RunConfig {
  Scenario scenario = Scenario::echo_single;

  // model
  bool infinite = false;  // thermodynamic-limit ring (echo-single/echo-coherent)
  int size = 1000;
  double delta = 1.0;
  std::optional<double> gap;  // zero<->one-magnon phase rate; default 2*delta
  double g = 1.0;
  double tau = 0.1;
  double tau_backward = 0.0;      // harper-reverse second kick period
  int eta = 1;
  std::string background = "ring";  // oracle backdrop: ring | kicked

  // state
  bool entangled = false;
  double alpha_re = 0.7071067811865476, alpha_im = 0.0;
  double beta_re = 0.7071067811865476, beta_im = 0.0;
  std::optional<double> beta2;  // sets alpha = sqrt(1-beta2), beta = sqrt(beta2)
  int partner = 5;              // entangled partner site r

  // process
  std::string channel;  // phase-flip | bit-flip | project-z | project-x ("" = gate)
  double p = 0.5;
  double gamma_re = 0.5773502691896258, gamma_im = 0.5773502691896258;
  double gate_delta_re = 0.5773502691896258, gate_delta_im = 0.0;
  int site = 1;            // event site m
  std::vector<int> sites;  // sequence sites (echo-multi, oracle sequence)
  double spacing = 1.0;    // sequence spacing
  int order = 0;           // echo-multi truncation order; 0 = sector-exact
  bool amplitude = false;  // echo-multi: emit Re of the bare event-string amplitude

  // sweep
  std::optional<Grid> t0_grid;     // epoch sweep
  std::optional<Grid> kicks_grid;  // kick-count sweep
  double t_max = 0.0;              // harper-reverse: largest common time
  bool averaged = false;

  // output
  std::string output = "magnon-echo.csv";
  int threads = 0;  // 0 = MAGNON_ECHO_THREADS or hardware
};

// A run plus the label that distinguishes its output file when several
// curves come out of one invocation ("" = single curve, written to `output`
// as-is; otherwise written to "<output stem>-<label>.csv").
struct LabeledConfig {
  std::string label;
  RunConfig config;
};

// Named survey bundles, each expanding to one or more fully pinned runs
// (labelled curves sharing an output stem). Unknown name -> usage_error.
// Free parameters (kick flux, entangled partner site, representative site
// draws) are pinned to documented defaults so runs are reproducible.
std::vector<LabeledConfig> preset(const std::string& name);
std::vector<std::string> preset_names();

// Parses flags and the optional INI config file (flags override file keys),
// validates ranges and scenario requirements, and expands --preset bundles.
// Throws usage_error for anything malformed. `args` excludes the program
// name. A --help request returns an empty list after printing usage.
std::vector<LabeledConfig> parse_config(const std::vector<std::string>& args);

// Cross-field validation shared by parse_config and the presets; throws
// usage_error with a message naming the offending field.
void validate(const RunConfig& config);

// Serialization of every non-default field as "key=value ..." for the CSV
// config comment; identical configs serialize identically.
std::string config_comment(const RunConfig& config);

}  // namespace magnon::cli
