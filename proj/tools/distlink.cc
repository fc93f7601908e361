#include <iostream>

#include "distlink/cli/cli.h"

int main(int argc, char** argv) {
  return distlink::cli::run_cli(argc, argv, std::cout, std::cerr);
}
