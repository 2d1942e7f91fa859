#include <iostream>

#include "gsm/cli.hpp"

int main(int argc, char** argv) {
  return gsm::run(argc, argv, std::cout, std::cerr);
}
