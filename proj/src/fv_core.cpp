#include "stochfv/fv_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stochfv/errors.hpp"

namespace stochfv {

SchemeOrder SchemeOrder::from_order(int order) {
  if (order == 1) return {1, Reconstruction::PiecewiseConstant, TimeIntegrator::ForwardEuler};
  if (order == 2) return {2, Reconstruction::MinmodLinear, TimeIntegrator::SspRk2};
  throw ConfigError("scheme order must be 1 or 2, got " + std::to_string(order));
}

void SchemeOrder::validate() const {
  if (*this != from_order(order)) throw ConfigError("inconsistent scheme order");
}

double minmod(double a, double b) noexcept {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

std::vector<FaceValues> reconstruct_minmod(std::span<const double> cells) {
  if (cells.size() < 3) throw ArgumentError("reconstruct_minmod needs at least one interior cell and two ghosts");
  std::vector<FaceValues> out(cells.size() - 2);
  for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
    const double s = minmod(cells[i] - cells[i - 1], cells[i + 1] - cells[i]);
    out[i - 1] = {cells[i] - 0.5 * s, cells[i] + 0.5 * s};
  }
  return out;
}

double cfl_number_of(const Point3& max_abs_eig, const StructuredMesh& mesh, double dt) {
  double s = 0.0;
  for (int a = 0; a < mesh.dimension(); ++a) s += max_abs_eig[static_cast<std::size_t>(a)] / mesh.spacing(a);
  return dt * s;
}

double cfl_dt(const Point3& max_abs_eig, const StructuredMesh& mesh, double cfl_number, double remaining) {
  if (!(cfl_number > 0.0)) throw ArgumentError("CFL number must be positive");
  for (int a = 0; a < mesh.dimension(); ++a) {
    const double l = max_abs_eig[static_cast<std::size_t>(a)];
    if (!(l >= 0.0) || !std::isfinite(l)) throw ArgumentError("eigenvalue bound must be finite and non-negative");
  }
  const double rate = cfl_number_of(max_abs_eig, mesh, 1.0);
  if (rate == 0.0) return remaining;
  return std::min(remaining, cfl_number / rate);
}

void CflStats::record(double cfl, double dt) {
  min_dt = steps == 0 ? dt : std::min(min_dt, dt);
  ++steps;
  max_cfl = std::max(max_cfl, cfl);
  if (cfl > 0.5 * (1.0 + 1e-12)) ++violations;
}

void CflStats::merge(const CflStats& other) {
  if (other.steps > 0) min_dt = steps == 0 ? other.min_dt : std::min(min_dt, other.min_dt);
  steps += other.steps;
  intervals += other.intervals;
  violations += other.violations;
  max_cfl = std::max(max_cfl, other.max_cfl);
}

TimeController::TimeController(double t_end, double h_target, double cfl_number)
    : t_end_(t_end), h_(h_target), cfl_(cfl_number), intervals_(0) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("final time must be finite and non-negative");
  if (!(h_target > 0.0) || !std::isfinite(h_target)) throw ConfigError("SDE interval must be positive");
  if (!(cfl_number > 0.0) || cfl_number > 0.5) throw ConfigError("CFL number must lie in (0, 1/2]");
  if (t_end > 0.0) {
    // Guard against ceil(3.0000000000000004) for ratios that are integers up to rounding.
    const double ratio = t_end / h_target;
    intervals_ = static_cast<std::size_t>(std::max(1.0, std::ceil(ratio * (1.0 - 1e-12))));
    h_ = t_end / static_cast<double>(intervals_);
  }
}

double sde_interval(double c, double dx, double lambda_hat) {
  if (!(c > 0.0) || !(dx > 0.0)) throw ArgumentError("sde_interval needs positive c and dx");
  if (!(lambda_hat > 0.0) || !std::isfinite(lambda_hat)) {
    throw ArgumentError("sde_interval needs a positive eigenvalue bound");
  }
  return c * dx / lambda_hat;
}

// ---------------------------------------------------------------------------

FvSolver::FvSolver(std::shared_ptr<const ConservationLaw> law, SchemeOrder scheme, MeshPtr mesh)
    : law_(std::move(law)), scheme_(scheme), mesh_(std::move(mesh)) {
  if (!law_) throw ArgumentError("FvSolver needs a conservation law");
  if (!mesh_) throw ArgumentError("FvSolver needs a mesh");
  scheme_.validate();
  const std::size_t m = law_->components();
  const std::size_t mc = law_->coefficient_components();
  const std::size_t g = scheme_.ghost_width();
  padded_u_ = PaddedField(mesh_, m, g);
  padded_c_ = PaddedField(mesh_, mc, g);
  coeffs_ = Field(mesh_, mc);
  stage_rhs_ = Field(mesh_, m);
  stage_u_ = Field(mesh_, m);
  std::size_t longest = 1;
  for (int a = 0; a < mesh_->dimension(); ++a) longest = std::max(longest, mesh_->extent(a));
  line_.resize(m * (longest + 2 * g));
  slope_.resize(longest + 2 * g);
  left_.resize(m * (longest + 1));
  right_.resize(m * (longest + 1));
  flux_.resize(m * (longest + 1));
  cface_.resize(std::max<std::size_t>(mc, 1) * (longest + 1));
}

void FvSolver::set_coefficients(const Field& coeffs) {
  if (coeffs.components() != law_->coefficient_components() || !coeffs.mesh().same_shape(*mesh_)) {
    throw ArgumentError("coefficient field does not match the model or mesh");
  }
  coeffs_ = coeffs;
  fill_padded(coeffs_, 0.0, padded_c_, true);
}

void FvSolver::sweep_axis(int axis, Field& out) {
  const StructuredMesh& mesh = *mesh_;
  const std::size_t m = law_->components();
  const std::size_t mc = law_->coefficient_components();
  const std::size_t n = mesh.extent(axis);
  const std::size_t nf = n + 1;
  const long g = static_cast<long>(scheme_.ghost_width());
  const std::size_t nline = n + 2 * static_cast<std::size_t>(g);
  const std::size_t su = padded_u_.stride(axis);
  const std::size_t sc = padded_c_.stride(axis);
  const double inv_dx = 1.0 / mesh.spacing(axis);
  const bool linear = scheme_.reconstruction == Reconstruction::MinmodLinear;

  std::vector<const double*> lp(m), rp(m), cp(mc);
  std::vector<double*> fp(m);
  for (std::size_t c = 0; c < m; ++c) {
    lp[c] = left_.data() + c * nf;
    rp[c] = right_.data() + c * nf;
    fp[c] = flux_.data() + c * nf;
  }
  for (std::size_t q = 0; q < mc; ++q) cp[q] = cface_.data() + q * nf;
  const FaceBatch batch{axis, nf, lp, rp, cp, fp};

  const auto& e = mesh.extents();
  // Loop over the two transverse axes; the swept axis index is pinned to 0.
  Index3 range = e;
  range[static_cast<std::size_t>(axis)] = 1;
  const std::size_t cells = mesh.cell_count();
  const std::size_t cstride = mesh.linear_index(axis == 0 ? 1 : 0, axis == 1 ? 1 : 0, axis == 2 ? 1 : 0);

  for (std::size_t k = 0; k < range[2]; ++k) {
    for (std::size_t j = 0; j < range[1]; ++j) {
      for (std::size_t i = 0; i < range[0]; ++i) {
        const std::size_t base_u = padded_u_.linear_index(static_cast<long>(i), static_cast<long>(j),
                                                          static_cast<long>(k));
        const std::size_t base_c = padded_c_.linear_index(static_cast<long>(i), static_cast<long>(j),
                                                          static_cast<long>(k));
        for (std::size_t c = 0; c < m; ++c) {
          const double* src = padded_u_.component_data(c);
          double* line = line_.data() + c * nline;
          for (std::size_t s = 0; s < nline; ++s) {
            line[s] = src[base_u + s * su - static_cast<std::size_t>(g) * su];
          }
          double* lf = left_.data() + c * nf;
          double* rf = right_.data() + c * nf;
          if (!linear) {
            for (std::size_t f = 0; f < nf; ++f) {
              lf[f] = line[f];  // cell f-1 sits at line index f when g == 1
              rf[f] = line[f + 1];
            }
          } else {
            // Slopes for cells -1 .. n (line indices 1 .. n+2).
            for (std::size_t s = 1; s + 1 < nline; ++s) {
              slope_[s] = minmod(line[s] - line[s - 1], line[s + 1] - line[s]);
            }
            for (std::size_t f = 0; f < nf; ++f) {
              lf[f] = line[f + 1] + 0.5 * slope_[f + 1];
              rf[f] = line[f + 2] - 0.5 * slope_[f + 2];
            }
          }
        }
        for (std::size_t q = 0; q < mc; ++q) {
          const double* src = padded_c_.component_data(q);
          double* cf = cface_.data() + q * nf;
          const double* first = src + base_c - sc;  // cell -1
          for (std::size_t f = 0; f < nf; ++f) cf[f] = 0.5 * (first[f * sc] + first[(f + 1) * sc]);
        }
        law_->face_fluxes(batch);
        const std::size_t cell0 = mesh.linear_index(i, j, k);
        for (std::size_t c = 0; c < m; ++c) {
          const double* fl = flux_.data() + c * nf;
          double* o = out.data().data() + c * cells + cell0;
          for (std::size_t f = 0; f < n; ++f) o[f * cstride] -= (fl[f + 1] - fl[f]) * inv_dx;
        }
      }
    }
  }
}

void FvSolver::ensure_finite(const Field& out, double t) const {
  const std::size_t cells = out.cells();
  const auto d = out.data();
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (!std::isfinite(d[n])) throw NumericalBlowup(t, n % cells, n / cells);
  }
}

void FvSolver::rhs(const Field& u, double t, Field& out) {
  if (u.components() != law_->components() || !u.mesh().same_shape(*mesh_)) {
    throw ArgumentError("state field does not match the model or mesh");
  }
  if (!out.same_shape(u)) out = Field(mesh_, u.components());
  fill_padded(u, t, padded_u_);
  out.fill(0.0);
  for (int axis = 0; axis < mesh_->dimension(); ++axis) sweep_axis(axis, out);
  if (law_->has_source()) law_->add_source(padded_u_, coeffs_, t, out);
  ensure_finite(out, t);
}

void FvSolver::forward_euler_step(Field& u, double t, double dt) {
  rhs(u, t, stage_rhs_);
  u.axpy(dt, stage_rhs_);
}

void FvSolver::ssp_rk2_step(Field& u, double t, double dt) {
  rhs(u, t, stage_rhs_);
  stage_u_ = u;
  stage_u_.axpy(dt, stage_rhs_);
  rhs(stage_u_, t + dt, stage_rhs_);
  stage_u_.axpy(dt, stage_rhs_);
  auto ud = u.data();
  const auto sd = stage_u_.data();
  for (std::size_t n = 0; n < ud.size(); ++n) ud[n] = 0.5 * ud[n] + 0.5 * sd[n];
}

void FvSolver::step(Field& u, double t, double dt) {
  if (scheme_.time_integrator == TimeIntegrator::SspRk2) {
    ssp_rk2_step(u, t, dt);
  } else {
    forward_euler_step(u, t, dt);
  }
}

void FvSolver::advance_interval(Field& u, double t0, double t1, double cfl_number, CflStats& stats) {
  if (!(t1 >= t0)) throw ArgumentError("advance_interval: t1 < t0");
  const Point3 lambda = law_->max_abs_eigenvalues(coeffs_);
  const double span = t1 - t0;
  const double dt_cfl = cfl_dt(lambda, *mesh_, cfl_number, span);
  double t = t0;
  ++stats.intervals;
  while (t1 - t > 1e-13 * std::max(span, 1e-300)) {
    const double remaining = t1 - t;
    const bool last = dt_cfl >= remaining;
    const double dt = last ? remaining : dt_cfl;
    step(u, t, dt);
    stats.record(cfl_number_of(lambda, *mesh_, dt), dt);
    t = last ? t1 : t + dt;
  }
}

// ---------------------------------------------------------------------------

Field ssp_rk2_step(const Field& state, const Field& coeffs, std::shared_ptr<const ConservationLaw> law, double dt,
                   double t) {
  FvSolver solver(std::move(law), SchemeOrder::from_order(2), state.mesh_ptr());
  solver.set_coefficients(coeffs);
  Field out = state;
  solver.ssp_rk2_step(out, t, dt);
  return out;
}

Field advance_interval(const Field& state, const Field& coeffs, std::shared_ptr<const ConservationLaw> law,
                       const SchemeOrder& scheme, TimeController& controller, std::size_t l) {
  if (l >= controller.intervals()) throw ArgumentError("advance_interval: interval index out of range");
  FvSolver solver(std::move(law), scheme, state.mesh_ptr());
  solver.set_coefficients(coeffs);
  Field out = state;
  solver.advance_interval(out, controller.interval_start(l), controller.interval_end(l), controller.cfl_number(),
                          controller.stats());
  return out;
}

}  // namespace stochfv
