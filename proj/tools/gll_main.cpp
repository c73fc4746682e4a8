#include <string>
#include <vector>

#include "gll/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gll::cli_run(args);
}
