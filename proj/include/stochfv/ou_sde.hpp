#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "stochfv/grid.hpp"

namespace stochfv {

enum class OuIntegrator { Milstein, ImplicitMilstein, WeakOrder2, ExactTransition };

std::string_view to_string(OuIntegrator integrator);
OuIntegrator parse_ou_integrator(std::string_view name);

/// Parameters of dZ = theta (mu(x) - Z) dt + sigma dG, Z(x, 0) = z0(x).
struct OUFieldParams {
  double theta = 1.0;
  double sigma = 1.0;
  Field mu;
  Field z0;

  /// Space-independent parameters broadcast over `mesh`.
  static OUFieldParams uniform(const MeshPtr& mesh, double theta, double sigma, double mu, double z0);
  void validate() const;
};

struct OUState {
  Field z;
  double t = 0.0;
  double h = 0.0;
  long step = 0;
  OuIntegrator integrator = OuIntegrator::Milstein;

  static OUState initial(const OUFieldParams& params, double h, OuIntegrator integrator);
};

// Single-cell updates. `g` is the noise sample for this step (standard normal in the
// scalar case, a GRF value in the field case).
double milstein_update(double z, double mu, double theta, double sigma, double h, double g) noexcept;
double implicit_milstein_update(double z, double mu, double theta, double sigma, double h, double g) noexcept;
double weak2_update(double z, double mu, double theta, double sigma, double h, double g) noexcept;
double exact_update(double z, double mu, double theta, double sigma, double h, double g) noexcept;

OUState step_milstein(OUState state, const OUFieldParams& params, const Field& noise);
OUState step_implicit_milstein(OUState state, const OUFieldParams& params, const Field& noise);
OUState step_weak2(OUState state, const OUFieldParams& params, const Field& noise);
OUState step_exact(OUState state, const OUFieldParams& params, const Field& noise);

/// Advance in place with the state's own integrator.
void advance(OUState& state, const OUFieldParams& params, const Field& noise);

struct OuMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of the scalar OU process started at a0.
OuMoments exact_moments(double theta, double sigma, double mu, double a0, double t);

/// Warning text when an explicit integrator is used with h*theta >= 2.
std::optional<std::string> stiffness_warning(OuIntegrator integrator, double h, double theta);

}  // namespace stochfv
