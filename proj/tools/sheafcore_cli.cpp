#include <iostream>

#include "sheafcore/cli.hpp"

int main(int argc, char** argv) {
  return sheafcore::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
