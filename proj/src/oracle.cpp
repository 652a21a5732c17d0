#include "stochfv/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "stochfv/errors.hpp"
#include "stochfv/rng.hpp"

namespace stochfv {

namespace {

double wrap(double x, double lower, double period) {
  double r = std::fmod(x - lower, period);
  if (r < 0.0) r += period;
  return lower + r;
}

// Number of periodic images on each side so that the kernel mass beyond them is below 1e-16.
long image_count(double sd, double period) { return 2 + static_cast<long>(std::ceil(9.0 * sd / period)); }

double indicator_mean(double x, double shift, double variance, const InitialProfile& u0) {
  const double y = wrap(x - shift, u0.lower, u0.period);
  if (variance <= 0.0) {
    if (y > u0.lo && y < u0.hi) return 1.0;
    if (y == u0.lo || y == u0.hi) return 0.5;
    return 0.0;
  }
  const double s = std::sqrt(2.0 * variance);
  const long images = image_count(std::sqrt(variance), u0.period);
  double sum = 0.0;
  for (long n = -images; n <= images; ++n) {
    const double yn = y + static_cast<double>(n) * u0.period;
    sum += 0.5 * (std::erf((yn - u0.lo) / s) - std::erf((yn - u0.hi) / s));
  }
  return sum;
}

double quadrature_mean(double x, double shift, double variance, const InitialProfile& u0) {
  if (variance <= 0.0) return u0(x - shift);
  const double sd = std::sqrt(variance);
  const double norm = 1.0 / (sd * std::sqrt(2.0 * std::numbers::pi));
  auto integrand = [&](double z) {
    // z is the displacement relative to the mean shift
    return norm * std::exp(-0.5 * z * z / variance) * u0(x - shift - z);
  };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -12.0 * sd, 12.0 * sd, 20, 1e-12,
                                                                       &error);
}

}  // namespace

void ScalarOuParams::validate() const {
  if (!(theta > 0.0)) throw ArgumentError("OU theta must be positive");
  if (!(sigma >= 0.0)) throw ArgumentError("OU sigma must be non-negative");
}

double integrated_ou_bracket(double x) {
  if (x < 0.5) {
    // sum_{n>=3} (2 (-1)^n - (-2)^n / 2) x^n / n!
    double term_a = 1.0;  // (-x)^n / n!
    double term_b = 1.0;  // (-2x)^n / n!
    double sum = 0.0;
    for (int n = 1; n <= 40; ++n) {
      term_a *= -x / n;
      term_b *= -2.0 * x / n;
      if (n >= 3) sum += 2.0 * term_a - 0.5 * term_b;
    }
    return sum;
  }
  return x + 2.0 * std::exp(-x) - 0.5 * std::exp(-2.0 * x) - 1.5;
}

double hat_mu(const ScalarOuParams& p, double t) {
  p.validate();
  if (t < 0.0) throw ArgumentError("hat_mu: t must be non-negative");
  return p.mu * t - (p.a0 - p.mu) * std::expm1(-p.theta * t) / p.theta;
}

double hat_sigma2(const ScalarOuParams& p, double t) {
  p.validate();
  if (t < 0.0) throw ArgumentError("hat_sigma2: t must be non-negative");
  const double th = p.theta;
  return p.sigma * p.sigma / (th * th * th) * integrated_ou_bracket(th * t);
}

InitialProfile InitialProfile::indicator(double lo, double hi, double lower, double period) {
  if (!(hi > lo) || !(period > 0.0)) throw ArgumentError("indicator needs lo < hi and a positive period");
  InitialProfile p;
  p.kind = Kind::Indicator;
  p.lo = lo;
  p.hi = hi;
  p.lower = lower;
  p.period = period;
  return p;
}

InitialProfile InitialProfile::from_function(std::function<double(double)> u0, double lower, double period) {
  if (!u0) throw ArgumentError("initial profile function is empty");
  InitialProfile p;
  p.kind = Kind::Function;
  p.function = std::move(u0);
  p.lower = lower;
  p.period = period;
  return p;
}

double InitialProfile::operator()(double x) const {
  const double y = wrap(x, lower, period);
  if (kind == Kind::Indicator) return (y >= lo && y < hi) ? 1.0 : 0.0;
  return function(y);
}

double exact_mean_at(double x, const ScalarOuParams& p, double t, const InitialProfile& u0) {
  const double shift = hat_mu(p, t);
  const double variance = hat_sigma2(p, t);
  if (u0.kind == InitialProfile::Kind::Indicator) return indicator_mean(x, shift, variance, u0);
  return quadrature_mean(x, shift, variance, u0);
}

double exact_variance_at(double x, const ScalarOuParams& p, double t, const InitialProfile& u0, std::uint64_t seed,
                         std::size_t draws) {
  if (u0.kind == InitialProfile::Kind::Indicator) {
    const double m = exact_mean_at(x, p, t, u0);
    return std::max(0.0, m * (1.0 - m));
  }
  const double shift = hat_mu(p, t);
  const double sd = std::sqrt(hat_sigma2(p, t));
  if (sd == 0.0) return 0.0;
  if (draws < 2) throw ArgumentError("exact_variance_at needs at least two draws");
  CounterRng rng(StreamKey{seed, 0, 0, 0});
  double mean = 0.0, m2 = 0.0;
  for (std::size_t n = 0; n < draws; ++n) {
    const double v = u0(x - shift - sd * rng.normal());
    const double d = v - mean;
    mean += d / static_cast<double>(n + 1);
    m2 += d * (v - mean);
  }
  return m2 / static_cast<double>(draws - 1);
}

Field exact_mean(const MeshPtr& mesh, const ScalarOuParams& p, double t, const InitialProfile& u0) {
  if (mesh->dimension() != 1) throw ArgumentError("the scalar oracle lives on 1-D meshes");
  Field f(mesh, 1);
  for (std::size_t n = 0; n < f.cells(); ++n) f(0, n) = exact_mean_at(mesh->cell_center_of(n)[0], p, t, u0);
  return f;
}

Field exact_second_moment(const MeshPtr& mesh, const ScalarOuParams& p, double t, const InitialProfile& u0,
                          std::uint64_t seed, std::size_t draws) {
  if (mesh->dimension() != 1) throw ArgumentError("the scalar oracle lives on 1-D meshes");
  Field f(mesh, 1);
  for (std::size_t n = 0; n < f.cells(); ++n) {
    f(0, n) = exact_variance_at(mesh->cell_center_of(n)[0], p, t, u0, seed, draws);
  }
  return f;
}

}  // namespace stochfv
