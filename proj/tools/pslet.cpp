#include <iostream>
#include <string>
#include <vector>

#include "pslet/cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv, argv + argc);
  return pslet::cli::run(args, std::cout, std::cerr);
}
