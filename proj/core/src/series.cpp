#include "magnon/series.hpp"

#include <stdexcept>

namespace magnon {

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::t0:
      return "t0";
    case SweepAxis::t:
      return "t";
    case SweepAxis::n:
      return "n";
    case SweepAxis::m:
      return "m";
  }
  throw std::logic_error("axis_name: unknown axis");
}

void check_echo_range(const EchoSeries& series) {
  constexpr double slack = 1e-10;
  for (const auto& [param, value] : series.samples) {
    if (!(value >= -slack && value <= 1.0 + slack)) {
      throw std::logic_error("EchoSeries: echo value outside [0, 1] at axis value " +
                             std::to_string(param));
    }
  }
}

}  // namespace magnon
