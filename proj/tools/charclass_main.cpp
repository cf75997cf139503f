#include <iostream>

#include "charclass/cli.hpp"

int main(int argc, char** argv) {
  const auto r = charclass::run_command(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit;
}
