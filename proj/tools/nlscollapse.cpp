#include <string>
#include <vector>

#include "nls/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nls::run_cli(args);
}
