#include <cstdlib>
#include <iostream>

#include "dispatch.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("PCOH_SEED")) env_seed = s;
  return pcoh::cli::dispatch(args, std::cout, std::cerr, env_seed);
}
