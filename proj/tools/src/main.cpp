#include "magnon_cli/runner.hpp"

int main(int argc, char** argv) {
  return magnon::cli::run_main(argc, argv);
}
