#include <iostream>
#include <string>
#include <vector>

#include "pinear/cli/commands.hpp"

int main(int argc, char** argv) {
  return pinear::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
