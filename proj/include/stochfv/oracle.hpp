#pragma once

#include <cstdint>
#include <functional>

#include "stochfv/grid.hpp"

namespace stochfv {

/// Scalar OU coefficient da = theta (mu - a) dt + sigma dB, a(0) = a0.
struct ScalarOuParams {
  double mu = 0.25;
  double theta = 20.0;
  double sigma = 0.5;
  double a0 = -0.25;

  void validate() const;
};

/// x + 2 e^{-x} - e^{-2x}/2 - 3/2, accurate for small x.
double integrated_ou_bracket(double x);

/// Mean of A(t) = int_0^t a(s) ds.
double hat_mu(const ScalarOuParams& p, double t);
/// Variance of A(t).
double hat_sigma2(const ScalarOuParams& p, double t);

/// Periodic initial profile on [lower, lower + period).
struct InitialProfile {
  enum class Kind { Indicator, Function };
  Kind kind = Kind::Indicator;
  double lo = 0.375;
  double hi = 0.625;
  std::function<double(double)> function;
  double lower = 0.0;
  double period = 1.0;

  static InitialProfile indicator(double lo, double hi, double lower = 0.0, double period = 1.0);
  static InitialProfile from_function(std::function<double(double)> u0, double lower = 0.0, double period = 1.0);

  double operator()(double x) const;
};

/// E u(x, t) for u_t + a(t) u_x = 0 with periodic wrap of the Gaussian kernel.
double exact_mean_at(double x, const ScalarOuParams& p, double t, const InitialProfile& u0);

/// Var u(x, t). Closed form for indicators; otherwise `draws` Monte Carlo samples of A(t).
double exact_variance_at(double x, const ScalarOuParams& p, double t, const InitialProfile& u0,
                         std::uint64_t seed = 1, std::size_t draws = 1'000'000);

/// Point values at the cell centers of a 1-D mesh.
Field exact_mean(const MeshPtr& mesh, const ScalarOuParams& p, double t, const InitialProfile& u0);
Field exact_second_moment(const MeshPtr& mesh, const ScalarOuParams& p, double t, const InitialProfile& u0,
                          std::uint64_t seed = 1, std::size_t draws = 1'000'000);

}  // namespace stochfv
