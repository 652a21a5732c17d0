#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stochfv/config.hpp"
#include "stochfv/monte_carlo.hpp"
#include "stochfv/oracle.hpp"

namespace stochfv {

/// A configured stochastic problem together with the quantities used to size its SDE interval.
struct BuiltProblem {
  StochasticProblem problem;
  double lambda_hat = 0.0;  // 0 when the interval comes from sde.h_dx_ratio
  double h_rule = 0.0;      // interval before rounding to t_end / L
  std::vector<std::string> warnings;
};

/// Mesh for `config`, optionally with `resolution` cells per axis instead of mesh.nx / mesh.ny.
MeshPtr build_mesh(const SimConfig& config, std::optional<std::size_t> resolution = std::nullopt);

BuiltProblem build_problem(const SimConfig& config, std::optional<std::size_t> resolution = std::nullopt);

OuIntegrator resolve_integrator(const SimConfig& config);
SpectralDensity build_density(const SimConfig& config);

/// Scalar OU parameters of the `a` coefficient (both mu and z0 must be constants).
ScalarOuParams scalar_ou_params(const SimConfig& config);
InitialProfile scalar_profile(const SimConfig& config);

/// Cell averages of `fine` over each coarse cell; extents must divide evenly.
Field restrict_average(const Field& fine, const MeshPtr& coarse);

}  // namespace stochfv
