#include "stochfv/ou_sde.hpp"

#include <cmath>
#include <string>

#include "stochfv/errors.hpp"

namespace stochfv {

std::string_view to_string(OuIntegrator integrator) {
  switch (integrator) {
    case OuIntegrator::Milstein:
      return "milstein";
    case OuIntegrator::ImplicitMilstein:
      return "implicit";
    case OuIntegrator::WeakOrder2:
      return "weak2";
    case OuIntegrator::ExactTransition:
      return "exact";
  }
  return "milstein";
}

OuIntegrator parse_ou_integrator(std::string_view name) {
  if (name == "milstein") return OuIntegrator::Milstein;
  if (name == "implicit") return OuIntegrator::ImplicitMilstein;
  if (name == "weak2") return OuIntegrator::WeakOrder2;
  if (name == "exact") return OuIntegrator::ExactTransition;
  throw ArgumentError("unknown OU integrator '" + std::string(name) + "'");
}

OUFieldParams OUFieldParams::uniform(const MeshPtr& mesh, double theta, double sigma, double mu, double z0) {
  OUFieldParams p;
  p.theta = theta;
  p.sigma = sigma;
  p.mu = Field(mesh, 1, mu);
  p.z0 = Field(mesh, 1, z0);
  p.validate();
  return p;
}

void OUFieldParams::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ArgumentError("OU theta must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("OU sigma must be non-negative");
  if (!mu.mesh_ptr() || !z0.mesh_ptr()) throw ArgumentError("OU mean and initial state need a mesh");
  if (!mu.same_shape(z0) || mu.components() != 1) {
    throw ArgumentError("OU mean and initial state must live on the same mesh");
  }
}

OUState OUState::initial(const OUFieldParams& params, double h, OuIntegrator integrator) {
  if (!(h > 0.0)) throw ArgumentError("SDE step must be positive");
  return OUState{params.z0, 0.0, h, 0, integrator};
}

double milstein_update(double z, double mu, double theta, double sigma, double h, double g) noexcept {
  return z + h * theta * (mu - z) + sigma * std::sqrt(h) * g;
}

double implicit_milstein_update(double z, double mu, double theta, double sigma, double h, double g) noexcept {
  return (z + h * theta * mu + sigma * std::sqrt(h) * g) / (1.0 + h * theta);
}

// Trapezoidal drift with an Euler predictor; the additive noise enters both stages with the
// same increment.
double weak2_update(double z, double mu, double theta, double sigma, double h, double g) noexcept {
  const double noise = sigma * std::sqrt(h) * g;
  const double predictor = z + h * theta * (mu - z) + noise;
  return z + 0.5 * h * (theta * (mu - z) + theta * (mu - predictor)) + noise;
}

double exact_update(double z, double mu, double theta, double sigma, double h, double g) noexcept {
  const double decay = std::exp(-theta * h);
  const double sd = sigma * std::sqrt(-std::expm1(-2.0 * theta * h) / (2.0 * theta));
  return mu + decay * (z - mu) + sd * g;
}

namespace {

template <double (*Update)(double, double, double, double, double, double) noexcept>
OUState apply(OUState state, const OUFieldParams& params, const Field& noise) {
  if (!state.z.same_shape(noise) || !state.z.same_shape(params.mu)) {
    throw ArgumentError("OU step: state, mean and noise must share one mesh");
  }
  auto z = state.z.data();
  const auto mu = params.mu.data();
  const auto g = noise.data();
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = Update(z[i], mu[i], params.theta, params.sigma, state.h, g[i]);
  }
  ++state.step;
  state.t = static_cast<double>(state.step) * state.h;
  return state;
}

}  // namespace

OUState step_milstein(OUState state, const OUFieldParams& params, const Field& noise) {
  return apply<milstein_update>(std::move(state), params, noise);
}

OUState step_implicit_milstein(OUState state, const OUFieldParams& params, const Field& noise) {
  return apply<implicit_milstein_update>(std::move(state), params, noise);
}

OUState step_weak2(OUState state, const OUFieldParams& params, const Field& noise) {
  return apply<weak2_update>(std::move(state), params, noise);
}

OUState step_exact(OUState state, const OUFieldParams& params, const Field& noise) {
  return apply<exact_update>(std::move(state), params, noise);
}

void advance(OUState& state, const OUFieldParams& params, const Field& noise) {
  switch (state.integrator) {
    case OuIntegrator::Milstein:
      state = step_milstein(std::move(state), params, noise);
      break;
    case OuIntegrator::ImplicitMilstein:
      state = step_implicit_milstein(std::move(state), params, noise);
      break;
    case OuIntegrator::WeakOrder2:
      state = step_weak2(std::move(state), params, noise);
      break;
    case OuIntegrator::ExactTransition:
      state = step_exact(std::move(state), params, noise);
      break;
  }
}

OuMoments exact_moments(double theta, double sigma, double mu, double a0, double t) {
  if (t < 0.0) throw ArgumentError("exact_moments: t must be non-negative");
  if (!(theta > 0.0)) throw ArgumentError("exact_moments: theta must be positive");
  return {mu + (a0 - mu) * std::exp(-theta * t), sigma * sigma / (2.0 * theta) * -std::expm1(-2.0 * theta * t)};
}

std::optional<std::string> stiffness_warning(OuIntegrator integrator, double h, double theta) {
  const bool explicit_scheme = integrator == OuIntegrator::Milstein || integrator == OuIntegrator::WeakOrder2;
  if (explicit_scheme && h * theta >= 2.0) {
    return "OU step h*theta = " + std::to_string(h * theta) + " >= 2 makes the explicit " +
           std::string(to_string(integrator)) + " integrator unstable; use ou.integrator = implicit";
  }
  return std::nullopt;
}

}  // namespace stochfv
