// stochfv: Monte Carlo finite-volume solver for conservation laws with OU-driven random coefficients.

#include <CLI11.hpp>

#include <fmt/format.h>

#include <fstream>
#include <iostream>

#include "stochfv/commands.hpp"
#include "stochfv/config.hpp"
#include "stochfv/errors.hpp"
#include "stochfv/grid_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitIo = 4;

struct CommonArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "configuration file (key = value lines)")->required();
  cmd->add_option("--set", args.sets, "override a key, e.g. --set fv.order=2")->take_all();
  cmd->add_option("--out", args.out, "output directory");
  cmd->add_option("--seed", args.seed, "base seed of the random streams");
  cmd->add_option("--threads", args.threads, "worker threads (default: STOCHFV_THREADS or all cores)");
}

stochfv::RunOptions options_from(const CLI::App* cmd, const CommonArgs& args) {
  stochfv::RunOptions o;
  if (cmd->count("--out") > 0) o.out = args.out;
  if (cmd->count("--seed") > 0) o.seed = args.seed;
  if (cmd->count("--threads") > 0) o.threads = args.threads;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo finite-volume solver for stochastic conservation laws"};
  app.require_subcommand(1);

  CommonArgs run_args, sample_args, converge_args, oracle_args;
  std::uint64_t index = 0;
  auto* run = app.add_subcommand("run", "estimate mean and variance fields");
  add_common(run, run_args);
  auto* sample = app.add_subcommand("sample", "solve and dump a single realization");
  add_common(sample, sample_args);
  sample->add_option("--index", index, "sample index to replay");
  auto* converge = app.add_subcommand("converge", "convergence table over converge.resolutions");
  add_common(converge, converge_args);
  auto* oracle = app.add_subcommand("oracle", "closed-form scalar moments as CSV");
  add_common(oracle, oracle_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = stochfv::parse_config(run_args.config, run_args.sets);
      const auto opts = options_from(run, run_args);
      const auto s = stochfv::cmd_run(cfg, opts);
      const auto eff = stochfv::effective_config(cfg, opts);
      std::cout << fmt::format("{} samples in {:.3f} s, outputs in {}\n", s.result.stats.samples,
                               s.result.stats.wall_seconds, eff.output_dir);
    } else if (sample->parsed()) {
      const auto cfg = stochfv::parse_config(sample_args.config, sample_args.sets);
      const auto opts = options_from(sample, sample_args);
      stochfv::cmd_sample(cfg, index, opts);
      std::cout << fmt::format("sample {} written to {}\n", index, stochfv::effective_config(cfg, opts).output_dir);
    } else if (converge->parsed()) {
      const auto cfg = stochfv::parse_config(converge_args.config, converge_args.sets);
      const auto rows = stochfv::cmd_converge(cfg, options_from(converge, converge_args));
      stochfv::write_convergence_csv(rows, std::cout);
    } else if (oracle->parsed()) {
      const auto cfg = stochfv::parse_config(oracle_args.config, oracle_args.sets);
      const auto opts = options_from(oracle, oracle_args);
      if (opts.out) {
        std::filesystem::create_directories(*opts.out);
        const auto path = *opts.out / "oracle.csv";
        std::ofstream os(path);
        if (!os) throw stochfv::IoError("cannot open '" + path.string() + "'");
        stochfv::cmd_oracle(cfg, opts, os);
      } else {
        stochfv::cmd_oracle(cfg, opts, std::cout);
      }
    }
  } catch (const stochfv::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const stochfv::UnsupportedConfiguration& e) {
    std::cerr << "unsupported configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const stochfv::ArgumentError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const stochfv::NumericalBlowup& e) {
    std::cerr << "numerical blowup: " << e.what() << '\n';
    return kExitBlowup;
  } catch (const stochfv::SampleFailure& e) {
    std::cerr << "sample failed: " << e.what() << '\n';
    return kExitBlowup;
  } catch (const stochfv::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
