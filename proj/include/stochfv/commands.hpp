#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stochfv/config.hpp"
#include "stochfv/monte_carlo.hpp"

namespace stochfv {

/// Command-line overrides that sit above the config file.
struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  bool quiet = false;
};

/// --threads, then mc.threads, then STOCHFV_THREADS, then the hardware count.
std::size_t resolve_threads(const SimConfig& config, const RunOptions& options);

/// Config with the command-line seed and output directory folded in.
SimConfig effective_config(const SimConfig& config, const RunOptions& options);

struct RunSummary {
  std::size_t samples = 0;
  double h = 0.0;
  std::size_t intervals = 0;
  double lambda_hat = 0.0;
  McResult result;
};

/// Monte Carlo run at one resolution without writing anything.
RunSummary run_config(const SimConfig& config, const RunOptions& options,
                      std::optional<std::size_t> resolution = std::nullopt);

RunSummary cmd_run(const SimConfig& config, const RunOptions& options);

struct SampleOutput {
  Field solution;
  Field coefficients;
};

SampleOutput cmd_sample(const SimConfig& config, std::uint64_t index, const RunOptions& options);

struct ConvergenceRow {
  std::size_t resolution = 0;
  double dx = 0.0;
  std::size_t samples = 0;
  std::string moment;  // "mean" or "variance"
  std::size_t component = 0;
  double abs_error = 0.0;
  double rel_error_percent = 0.0;
  std::optional<double> rate;  // log2 rate against the previous resolution
};

std::vector<ConvergenceRow> cmd_converge(const SimConfig& config, const RunOptions& options);
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os);

/// (x, mean, variance) of the closed-form scalar moments at the cell centers.
void cmd_oracle(const SimConfig& config, const RunOptions& options, std::ostream& os);

}  // namespace stochfv
