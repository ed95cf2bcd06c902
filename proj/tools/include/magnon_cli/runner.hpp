#pragma once

#include <string>

#include "magnon_cli/config.hpp"
#include "magnon_cli/csv.hpp"

namespace magnon::cli {

// Evaluates one configured run and returns its CSV table (not yet written).
// Throws usage_error for configuration problems detected late, and the core
// library's exceptions for runtime failures.
CsvTable run_scenario(const RunConfig& config);

// Output file for a labeled curve: "out.csv" + label "pz" -> "out-pz.csv";
// an empty label returns `base` unchanged.
std::string output_path(const std::string& base, const std::string& label);

// Full command-line entry point: parse, run every configured curve, write
// the CSV file(s). Returns the process exit code (0 success, 2 usage error,
// 1 runtime error).
int run_main(int argc, const char* const* argv);

}  // namespace magnon::cli
