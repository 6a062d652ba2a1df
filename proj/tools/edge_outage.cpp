#include <iostream>
#include <string>
#include <vector>

#include "edge_outage/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return edge_outage::cli::run(args, std::cout, std::cerr);
}
