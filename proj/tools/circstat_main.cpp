#include <iostream>
#include <string>
#include <vector>

#include "circstat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return circstat::cli::runCli(args, std::cout, std::cerr);
}
