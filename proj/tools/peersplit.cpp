#include <string>
#include <vector>

#include "peersplit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return peersplit::run_cli(std::move(args));
}
