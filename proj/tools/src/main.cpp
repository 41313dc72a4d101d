#include <iostream>

#include "metamatrix/cli/app.hpp"

int main(int argc, char **argv) {
  return metamatrix::cli::run(argc, argv, std::cout, std::cerr);
}
