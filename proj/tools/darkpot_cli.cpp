#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "darkpot/app/commands.hpp"
#include "darkpot/errors.hpp"

int main(int argc, char** argv) {
  using namespace darkpot::app;

  CLI::App cli{"Dark-state non-adiabatic potentials and dipolar bound states"};
  std::string config_path;
  std::string out_dir = "out";
  std::string formats;
  unsigned threads = 0;
  long long seed = -1;
  cli.add_option("--config", config_path, "run configuration (JSON, comments allowed)")->required();
  cli.add_option("--out", out_dir, "output directory");
  cli.add_option("--format", formats, "comma-separated subset of csv,json,svg");
  cli.add_option("--threads", threads, "worker threads for scans")->check(CLI::PositiveNumber);
  cli.add_option("--seed", seed, "eigensolver start-vector seed")->check(CLI::NonNegativeNumber);
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    RunConfig config = load_config(config_path);
    if (!formats.empty()) config.formats = parse_formats(formats);
    if (threads > 0) config.threads = threads;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    std::filesystem::create_directories(out_dir);
    const Json summary = run_command(config, out_dir);
    std::printf("%s: wrote outputs to %s\n", to_string(config.command), out_dir.c_str());
    return kOk;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfig;
  } catch (const darkpot::InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kConfig;
  } catch (const darkpot::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumeric;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOther;
  }
}
