#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "stochfv/grid.hpp"

namespace stochfv {

enum class Reconstruction { PiecewiseConstant, MinmodLinear };
enum class TimeIntegrator { ForwardEuler, SspRk2 };

struct SchemeOrder {
  int order = 1;
  Reconstruction reconstruction = Reconstruction::PiecewiseConstant;
  TimeIntegrator time_integrator = TimeIntegrator::ForwardEuler;

  /// Order 1 is (piecewise constant, forward Euler); order 2 is (minmod, SSP-RK2).
  static SchemeOrder from_order(int order);
  void validate() const;
  std::size_t ghost_width() const noexcept { return reconstruction == Reconstruction::MinmodLinear ? 2 : 1; }

  friend bool operator==(const SchemeOrder&, const SchemeOrder&) = default;
};

/// Reconstructed states on a run of faces along one axis. Face f separates cells f-1 and f;
/// `left` is the trace from cell f-1, `right` the trace from cell f. Arrays are indexed
/// [component][face]; `coeff` holds face-averaged coefficient values.
struct FaceBatch {
  int axis = 0;
  std::size_t count = 0;
  std::span<const double* const> left;
  std::span<const double* const> right;
  std::span<const double* const> coeff;
  std::span<double* const> flux;
};

/// A linear conservation (or balance) law with frozen coefficient fields.
class ConservationLaw {
 public:
  virtual ~ConservationLaw() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t components() const = 0;
  virtual std::size_t coefficient_components() const = 0;
  virtual bool conservative() const = 0;

  /// Numerical flux for every face in the batch.
  virtual void face_fluxes(const FaceBatch& faces) const = 0;

  /// Largest absolute eigenvalue of the directional flux matrix per axis, over all cells.
  virtual Point3 max_abs_eigenvalues(const Field& coeffs) const = 0;

  virtual bool has_source() const { return false; }
  /// Adds the source term to `rhs` (semi-discrete right-hand side).
  virtual void add_source(const PaddedField& /*u*/, const Field& /*coeffs*/, double /*t*/, Field& /*rhs*/) const {}
};

double minmod(double a, double b) noexcept;

struct FaceValues {
  double left = 0.0;   // value at the cell's left face
  double right = 0.0;  // value at the cell's right face
};

/// Minmod-limited linear reconstruction. `cells` carries one ghost cell on each side; the
/// result has one entry per interior cell.
std::vector<FaceValues> reconstruct_minmod(std::span<const double> cells);

/// Largest time step allowed by dt * sum_a(lambda_a / dx_a) <= cfl_number. Returns
/// `remaining` when every eigenvalue bound is zero.
double cfl_dt(const Point3& max_abs_eig, const StructuredMesh& mesh, double cfl_number, double remaining);

/// dt * sum_a(lambda_a / dx_a)
double cfl_number_of(const Point3& max_abs_eig, const StructuredMesh& mesh, double dt);

struct CflStats {
  std::size_t steps = 0;
  std::size_t intervals = 0;
  std::size_t violations = 0;
  double max_cfl = 0.0;
  double min_dt = 0.0;

  void record(double cfl, double dt);
  void merge(const CflStats& other);
};

/// Fixed SDE interval h = t_end / L with CFL-limited finite-volume steps inside each interval.
class TimeController {
 public:
  /// L = ceil(t_end / h_target); h = t_end / L. `t_end == 0` gives no intervals.
  TimeController(double t_end, double h_target, double cfl_number = 0.45);

  double h() const noexcept { return h_; }
  double cfl_number() const noexcept { return cfl_; }
  double t_end() const noexcept { return t_end_; }
  std::size_t intervals() const noexcept { return intervals_; }
  double interval_start(std::size_t l) const noexcept { return static_cast<double>(l) * h_; }
  double interval_end(std::size_t l) const noexcept {
    return l + 1 == intervals_ ? t_end_ : static_cast<double>(l + 1) * h_;
  }

  CflStats& stats() noexcept { return stats_; }
  const CflStats& stats() const noexcept { return stats_; }

 private:
  double t_end_;
  double h_;
  double cfl_;
  std::size_t intervals_;
  CflStats stats_;
};

/// h = c * dx / lambda_hat
double sde_interval(double c, double dx, double lambda_hat);

/// Flux-differencing solver for one conservation law on one mesh. Owns its scratch storage;
/// one instance per worker.
class FvSolver {
 public:
  FvSolver(std::shared_ptr<const ConservationLaw> law, SchemeOrder scheme, MeshPtr mesh);

  const ConservationLaw& law() const noexcept { return *law_; }
  const SchemeOrder& scheme() const noexcept { return scheme_; }

  /// Freeze the coefficient field used by subsequent evaluations.
  void set_coefficients(const Field& coeffs);
  const Field& coefficients() const noexcept { return coeffs_; }

  /// Semi-discrete operator L(U) at time t.
  void rhs(const Field& u, double t, Field& out);

  void forward_euler_step(Field& u, double t, double dt);
  void ssp_rk2_step(Field& u, double t, double dt);
  void step(Field& u, double t, double dt);

  /// Advance from t0 to exactly t1 with the frozen coefficients; CFL steps with a truncated last step.
  void advance_interval(Field& u, double t0, double t1, double cfl_number, CflStats& stats);

 private:
  void sweep_axis(int axis, Field& out);
  void ensure_finite(const Field& out, double t) const;

  std::shared_ptr<const ConservationLaw> law_;
  SchemeOrder scheme_;
  MeshPtr mesh_;
  Field coeffs_;
  PaddedField padded_u_;
  PaddedField padded_c_;
  Field stage_rhs_;
  Field stage_u_;
  std::vector<double> line_;
  std::vector<double> left_;
  std::vector<double> right_;
  std::vector<double> cface_;
  std::vector<double> flux_;
  std::vector<double> slope_;
};

/// One SSP-RK2 step with frozen coefficients.
Field ssp_rk2_step(const Field& state, const Field& coeffs, std::shared_ptr<const ConservationLaw> law, double dt,
                   double t = 0.0);

/// Advance `state` across SDE interval `l` of `controller` with frozen `coeffs`.
Field advance_interval(const Field& state, const Field& coeffs, std::shared_ptr<const ConservationLaw> law,
                       const SchemeOrder& scheme, TimeController& controller, std::size_t l);

}  // namespace stochfv
