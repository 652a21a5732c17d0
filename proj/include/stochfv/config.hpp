#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stochfv/monte_carlo.hpp"

namespace stochfv {

/// Settings of one OU-driven coefficient field.
///
/// `mu` is `const:<v>`, `induction_mu_u` or `induction_mu_v`; `z0` is `const:<v>` or `mean`.
struct OuCoefficientConfig {
  double theta = 1.0;
  double sigma = 1.0;
  std::string mu = "const:0";
  std::string z0 = "mean";

  friend bool operator==(const OuCoefficientConfig&, const OuCoefficientConfig&) = default;
};

struct SimConfig {
  std::string scenario;
  std::string model = "scalar_ou";

  std::size_t nx = 64;
  std::size_t ny = 64;
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;

  int order = 1;
  double cfl = 0.45;
  double t_end = 1.0;

  double h_factor = 0.5;
  std::optional<double> h_dx_ratio;
  std::string integrator = "auto";
  std::map<std::string, OuCoefficientConfig> ou;

  std::string grf_kind = "rational";
  double grf_q = 2.0;
  double grf_l = 4.0;
  double grf_corr_length = 0.1;
  std::string grf_table;

  double rho0 = 1.0;
  double K0 = 1.0;
  std::string acoustics_boundary = "periodic";
  std::string scalar_initial = "indicator:0.375,0.625";
  std::string induction_initial = "gradient";
  std::string induction_scheme = "symmetric-upwind";

  SampleRule samples = SampleRule::explicit_count(100);
  std::uint64_t seed = 1;
  std::string threads = "auto";
  bool skip_failed = false;
  bool progress = false;

  std::string output_dir = "out";
  std::string formats = "csv,raw";

  std::vector<std::size_t> converge_resolutions;
  std::string converge_reference = "oracle";

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Coefficient names accepted under `ou.<name>.*`.
const std::vector<std::string>& coefficient_names();

/// Names and texts of the shipped scenario presets.
const std::map<std::string, std::string>& scenario_presets();

/// Scenario preset whose defaults back a bare `model = ...` selection.
std::string default_scenario_for(const std::string& model);

std::vector<std::string> known_keys();

/// Parse `key = value` text. Presets are applied first, then `text`, then `overrides`
/// (`key=value` strings); the result is validated.
SimConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides = {},
                            const std::string& source = "<config>");
SimConfig parse_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

void validate(const SimConfig& config);

/// Fully resolved config as parseable `key = value` lines.
std::string echo_config(const SimConfig& config);

}  // namespace stochfv
