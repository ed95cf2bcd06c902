#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace magnon {

// Sweep variable of a sampled curve: QDP epoch t0, elapsed time t, event or
// kick count n, or site index m.
enum class SweepAxis { t0, t, n, m };

std::string_view axis_name(SweepAxis axis);

// A sampled Loschmidt-echo curve: (axis value, L) pairs plus free-form
// metadata describing the chain, initial state, and process that produced it.
struct EchoSeries {
  SweepAxis axis = SweepAxis::t0;
  std::vector<std::pair<double, double>> samples;
  std::string chain_desc;
  std::string state_desc;
  std::string process_desc;
};

// Echo values are probabilities; throws std::logic_error if any sample lies
// outside [0 - 1e-10, 1 + 1e-10]. Producers of echo curves call this before
// returning.
void check_echo_range(const EchoSeries& series);

}  // namespace magnon
