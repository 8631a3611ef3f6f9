#include <iostream>

#include "CLI11.hpp"
#include "app/run.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Spectral triples on fractals and balls: verification and dimension runs"};
  cli.require_subcommand(1);

  fracspec::app::CommandOptions options;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  CLI::App* run = cli.add_subcommand("run", "Run the experiment described by a JSON config");
  run->add_option("config", options.config, "Path to the config file")->required();
  run->add_option("--out", options.out, "Output directory")->capture_default_str();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Override the config seed");
  CLI::Option* threads_opt = run->add_option("--threads", threads, "Override the worker count");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : fracspec::app::kConfigFailure;
  }
  if (*seed_opt) options.seed = seed;
  if (*threads_opt) options.threads = threads;
  return fracspec::app::run_command(options, std::cout, std::cerr);
}
