// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ife1d/ife1d.h"

namespace {

std::vector<std::string> split_lines(const char* text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Immersed finite element experiments in one dimension"};
  app.set_version_flag("--version", std::string(ife1d_version()));
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  unsigned hw = std::thread::hardware_concurrency();
  int threads = hw ? static_cast<int>(hw) : 1;

  auto* list = app.add_subcommand("list", "print the available experiments");
  const auto names = split_lines(ife1d_experiment_names());
  std::vector<CLI::App*> subs;
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (default: $IFE1D_OUT or out/<experiment>)");
    sub->add_option("--seed", seed, "RNG seed; overrides the config");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& n : names) std::cout << n << '\n';
    return 0;
  }

  for (auto* sub : subs) {
    if (!sub->parsed()) continue;
    std::string config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      config = ss.str();
    }
    if (out_dir.empty()) {
      const char* env = std::getenv("IFE1D_OUT");
      out_dir = env && *env ? std::string(env) : "out/" + sub->get_name();
    }
    const int override_seed = sub->count("--seed") > 0;
    const ife1d_status st =
        ife1d_run_experiment(sub->get_name().c_str(), config.c_str(), out_dir.c_str(), seed, override_seed, threads);
    if (st != IFE1D_OK) {
      std::cerr << "error: " << ife1d_last_error() << '\n';
      return static_cast<int>(st);
    }
    std::cout << "wrote " << out_dir << '\n';
    return 0;
  }
  return 1;
}
