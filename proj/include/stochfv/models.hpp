#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stochfv/fv_core.hpp"
#include "stochfv/grid.hpp"
#include "stochfv/ou_sde.hpp"

namespace stochfv {

using State3 = std::array<double, 3>;

struct AcousticsParams {
  double rho0 = 1.0;
  double K0 = 1.0;
  double c0 = 1.0;

  static AcousticsParams make(double rho0, double K0);
};

/// Everything the solver needs to know about one model.
struct ModelSpec {
  std::string name;
  std::size_t components = 1;
  int dimension = 1;
  std::vector<std::string> coefficients;
  bool conservative = true;
  std::shared_ptr<const ConservationLaw> law;
  std::function<Field(const MeshPtr&)> initial;
  BoundarySpec boundary;
};

// --- scalar advection u_t + (a(t) u)_x = 0 ---------------------------------

double scalar_flux_upwind(double u_left, double u_right, double a_face) noexcept;

class ScalarAdvection final : public ConservationLaw {
 public:
  std::string_view name() const override { return "scalar_ou"; }
  std::size_t components() const override { return 1; }
  std::size_t coefficient_components() const override { return 1; }
  bool conservative() const override { return true; }
  void face_fluxes(const FaceBatch& faces) const override;
  Point3 max_abs_eigenvalues(const Field& coeffs) const override;
};

/// Cell averages of the indicator of [lo, hi] (periodic wrap not applied).
Field indicator_cell_averages(const MeshPtr& mesh, double lo, double hi);

/// sup over [0, t_end] of |E a(t)| for the scalar OU coefficient.
double scalar_eig_bound(double theta, double mu, double a0, double t_end);

// --- linear acoustics, U = (p, u, v), coefficients (u0, v0) ------------------

/// Physical flux A^w U along the unit axis vector w.
State3 acoustics_physical_flux(const State3& u, const std::array<double, 2>& w, double u0, double v0,
                               const AcousticsParams& params) noexcept;

/// HLL flux with s_L, s_R = u0.w -/+ c0.
State3 acoustics_flux_hll(const State3& left, const State3& right, const std::array<double, 2>& w, double u0,
                          double v0, const AcousticsParams& params);

/// ||Q Lambda Q^{-1} - A^w||_max for the closed-form eigensystem.
double acoustics_hyperbolicity_residual(const std::array<double, 2>& w, double u0, double v0,
                                        const AcousticsParams& params);

class Acoustics2d final : public ConservationLaw {
 public:
  explicit Acoustics2d(AcousticsParams params) : params_(params) {}
  const AcousticsParams& params() const noexcept { return params_; }

  std::string_view name() const override { return "acoustics2d"; }
  std::size_t components() const override { return 3; }
  std::size_t coefficient_components() const override { return 2; }
  bool conservative() const override { return true; }
  void face_fluxes(const FaceBatch& faces) const override;
  Point3 max_abs_eigenvalues(const Field& coeffs) const override;

 private:
  AcousticsParams params_;
};

/// 2 c0 + max_x sup_{t in [0, t_end]} (|E u0| + |E v0|).
double acoustics_eig_bound(const OUFieldParams& u0, const OUFieldParams& v0, const AcousticsParams& params,
                           double t_end);

/// Boundary pulse on the left wall: (0, sin(4 pi t), 0) for |y - 1/2| < 0.05, zero otherwise.
DirichletFunction acoustics_left_pulse();

// --- magnetic induction in symmetric form ------------------------------------

/// Upwind transport plus centered -V div_h(U) source. Periodic meshes only.
class Induction2d final : public ConservationLaw {
 public:
  std::string_view name() const override { return "induction2d"; }
  std::size_t components() const override { return 2; }
  std::size_t coefficient_components() const override { return 2; }
  bool conservative() const override { return false; }
  void face_fluxes(const FaceBatch& faces) const override;
  Point3 max_abs_eigenvalues(const Field& coeffs) const override;
  bool has_source() const override { return true; }
  void add_source(const PaddedField& u, const Field& coeffs, double t, Field& rhs) const override;
};

/// Semi-discrete induction operator for a given velocity field.
Field induction_rhs(const Field& b, const Field& velocity);

enum class InductionInitial { Gradient, Curl };

/// Gradient: (sin 2pi x cos 2pi y + 1, cos 2pi x sin 2pi y - 1).
/// Curl: (d_y A, -d_x A) of A = sin(2 pi x) sin(2 pi y) / (2 pi) + y - x, which is divergence free.
std::array<double, 2> induction_initial_at(double x, double y, InductionInitial kind = InductionInitial::Gradient);
Field induction_initial(const MeshPtr& mesh, InductionInitial kind = InductionInitial::Gradient);

std::array<double, 2> induction_mean_velocity(double x, double y);

/// Centered discrete divergence of a two-component field on a periodic mesh.
Field discrete_divergence(const Field& b);

/// max_x sup_{t in [0, t_end]} (|E u| + |E v|).
double induction_eig_bound(const OUFieldParams& u, const OUFieldParams& v, double t_end);

// --- registry ----------------------------------------------------------------

ModelSpec scalar_model(double indicator_lo = 0.375, double indicator_hi = 0.625);
ModelSpec acoustics_model(const AcousticsParams& params, BoundarySpec boundary);
ModelSpec induction_model(InductionInitial initial = InductionInitial::Gradient);

}  // namespace stochfv
