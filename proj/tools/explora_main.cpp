#include <string>
#include <vector>

#include "explora/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return explora::run_cli(std::move(args));
}
