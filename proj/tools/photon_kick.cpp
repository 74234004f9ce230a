#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "photon_kick/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_config;
  if (const char* path = std::getenv(photon_kick::cli::kConfigEnvVar)) env_config = path;
  return photon_kick::cli::run_cli(args, std::cout, std::cerr, env_config);
}
