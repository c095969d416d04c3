#include <iostream>
#include <string>
#include <vector>

#include "relbps/cli/job.hpp"

int main(int argc, char** argv) {
  return relbps::cli::main_entry(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
