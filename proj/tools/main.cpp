#include <string>
#include <vector>

#include "maxcut/cli.hpp"

int main(int argc, char** argv) {
  return maxcut::cli::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
