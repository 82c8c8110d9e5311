#include <iostream>
#include <string>
#include <vector>

#include "jscc/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jscc::execute(args, std::cout, std::cerr);
}
