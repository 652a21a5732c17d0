#include "stochfv/models.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stochfv/errors.hpp"

namespace stochfv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Mean of a scalar OU process at time t: mu + (a0 - mu) exp(-theta t).
double ou_mean(double theta, double mu, double a0, double t) { return mu + (a0 - mu) * std::exp(-theta * t); }

std::vector<double> time_grid(double t_end) {
  constexpr int kPoints = 257;
  std::vector<double> ts(kPoints);
  for (int n = 0; n < kPoints; ++n) ts[static_cast<std::size_t>(n)] = t_end * n / (kPoints - 1);
  return ts;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double pair_eig_bound(const OUFieldParams& a, const OUFieldParams& b, double t_end) {
  if (t_end < 0.0) throw ArgumentError("eigenvalue bound needs t_end >= 0");
  if (!a.mu.same_shape(b.mu)) throw ArgumentError("velocity components live on different meshes");
  const auto ma = a.mu.data(), za = a.z0.data(), mb = b.mu.data(), zb = b.z0.data();
  double best = 0.0;
  for (double t : time_grid(t_end)) {
    const double da = std::exp(-a.theta * t);
    const double db = std::exp(-b.theta * t);
    for (std::size_t n = 0; n < ma.size(); ++n) {
      const double s = std::abs(ma[n] + (za[n] - ma[n]) * da) + std::abs(mb[n] + (zb[n] - mb[n]) * db);
      best = std::max(best, s);
    }
  }
  return best;
}

}  // namespace

AcousticsParams AcousticsParams::make(double rho0, double K0) {
  if (!(rho0 > 0.0) || !(K0 > 0.0)) throw ConfigError("acoustics needs rho0 > 0 and K0 > 0");
  return {rho0, K0, std::sqrt(K0 / rho0)};
}

// ---------------------------------------------------------------------------

double scalar_flux_upwind(double u_left, double u_right, double a_face) noexcept {
  return a_face >= 0.0 ? a_face * u_left : a_face * u_right;
}

void ScalarAdvection::face_fluxes(const FaceBatch& faces) const {
  const double* ul = faces.left[0];
  const double* ur = faces.right[0];
  const double* a = faces.coeff[0];
  double* f = faces.flux[0];
  for (std::size_t n = 0; n < faces.count; ++n) f[n] = scalar_flux_upwind(ul[n], ur[n], a[n]);
}

Point3 ScalarAdvection::max_abs_eigenvalues(const Field& coeffs) const {
  return {max_abs(coeffs.component(0)), 0.0, 0.0};
}

Field indicator_cell_averages(const MeshPtr& mesh, double lo, double hi) {
  Field f(mesh, 1);
  const double dx = mesh->spacing(0);
  for (std::size_t n = 0; n < f.cells(); ++n) {
    const Point3 c = mesh->cell_center_of(n);
    const double a = std::max(lo, c[0] - 0.5 * dx);
    const double b = std::min(hi, c[0] + 0.5 * dx);
    f(0, n) = std::max(0.0, b - a) / dx;
  }
  return f;
}

double scalar_eig_bound(double theta, double mu, double a0, double t_end) {
  if (t_end < 0.0) throw ArgumentError("eigenvalue bound needs t_end >= 0");
  // E a(t) is monotone in t, so the supremum of its modulus sits at an end point.
  return std::max(std::abs(a0), std::abs(ou_mean(theta, mu, a0, t_end)));
}

// ---------------------------------------------------------------------------

State3 acoustics_physical_flux(const State3& u, const std::array<double, 2>& w, double u0, double v0,
                               const AcousticsParams& params) noexcept {
  const double un = u0 * w[0] + v0 * w[1];
  const double normal_velocity = u[1] * w[0] + u[2] * w[1];
  return {un * u[0] + params.K0 * normal_velocity, un * u[1] + w[0] * u[0] / params.rho0,
          un * u[2] + w[1] * u[0] / params.rho0};
}

State3 acoustics_flux_hll(const State3& left, const State3& right, const std::array<double, 2>& w, double u0,
                          double v0, const AcousticsParams& params) {
  const double un = u0 * w[0] + v0 * w[1];
  const double sl = un - params.c0;
  const double sr = un + params.c0;
  if (sl == sr) throw ConfigError("HLL flux with coincident wave speeds (c0 = 0)");
  const State3 fl = acoustics_physical_flux(left, w, u0, v0, params);
  if (sl >= 0.0) return fl;
  const State3 fr = acoustics_physical_flux(right, w, u0, v0, params);
  if (sr <= 0.0) return fr;
  State3 out{};
  for (std::size_t c = 0; c < 3; ++c) {
    out[c] = (sr * fl[c] - sl * fr[c] + sl * sr * (right[c] - left[c])) / (sr - sl);
  }
  return out;
}

double acoustics_hyperbolicity_residual(const std::array<double, 2>& w, double u0, double v0,
                                        const AcousticsParams& params) {
  const double un = u0 * w[0] + v0 * w[1];
  const double rc = params.rho0 * params.c0;
  Eigen::Matrix3d a;
  a << un, params.K0 * w[0], params.K0 * w[1],  //
      w[0] / params.rho0, un, 0.0,              //
      w[1] / params.rho0, 0.0, un;
  Eigen::Matrix3d q;
  q << -rc, 0.0, rc,  //
      w[0], -w[1], w[0],  //
      w[1], w[0], w[1];
  const Eigen::Vector3d lambda(un - params.c0, un, un + params.c0);
  const Eigen::Matrix3d rebuilt = q * lambda.asDiagonal() * q.inverse();
  return (rebuilt - a).cwiseAbs().maxCoeff();
}

void Acoustics2d::face_fluxes(const FaceBatch& faces) const {
  const std::array<double, 2> w = faces.axis == 0 ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
  const double* bu = faces.coeff[0];
  const double* bv = faces.coeff[1];
  for (std::size_t n = 0; n < faces.count; ++n) {
    const State3 l{faces.left[0][n], faces.left[1][n], faces.left[2][n]};
    const State3 r{faces.right[0][n], faces.right[1][n], faces.right[2][n]};
    const State3 f = acoustics_flux_hll(l, r, w, bu[n], bv[n], params_);
    faces.flux[0][n] = f[0];
    faces.flux[1][n] = f[1];
    faces.flux[2][n] = f[2];
  }
}

Point3 Acoustics2d::max_abs_eigenvalues(const Field& coeffs) const {
  return {max_abs(coeffs.component(0)) + params_.c0, max_abs(coeffs.component(1)) + params_.c0, 0.0};
}

double acoustics_eig_bound(const OUFieldParams& u0, const OUFieldParams& v0, const AcousticsParams& params,
                           double t_end) {
  return 2.0 * params.c0 + pair_eig_bound(u0, v0, t_end);
}

DirichletFunction acoustics_left_pulse() {
  return [](const Point3& x, double t, std::span<double> values) {
    std::fill(values.begin(), values.end(), 0.0);
    if (std::abs(x[1] - 0.5) < 0.05) values[1] = std::sin(2.0 * kTwoPi * t);
  };
}

// ---------------------------------------------------------------------------

void Induction2d::face_fluxes(const FaceBatch& faces) const {
  const std::size_t j = static_cast<std::size_t>(faces.axis);
  const double* vj = faces.coeff[j];
  const double* lj = faces.left[j];
  const double* rj = faces.right[j];
  for (std::size_t i = 0; i < 2; ++i) {
    const double* vi = faces.coeff[i];
    const double* li = faces.left[i];
    const double* ri = faces.right[i];
    double* f = faces.flux[i];
    for (std::size_t n = 0; n < faces.count; ++n) {
      const double upwind = vj[n] >= 0.0 ? li[n] : ri[n];
      f[n] = vj[n] * upwind - 0.5 * (lj[n] + rj[n]) * vi[n];
    }
  }
}

Point3 Induction2d::max_abs_eigenvalues(const Field& coeffs) const {
  return {max_abs(coeffs.component(0)), max_abs(coeffs.component(1)), 0.0};
}

void Induction2d::add_source(const PaddedField& u, const Field& coeffs, double /*t*/, Field& rhs) const {
  const StructuredMesh& mesh = u.mesh();
  if (mesh.dimension() != 2 || !mesh.fully_periodic()) {
    throw UnsupportedConfiguration("the induction model runs on periodic 2-D meshes only");
  }
  const long ni = static_cast<long>(mesh.extent(0));
  const long nj = static_cast<long>(mesh.extent(1));
  const double hx = 0.5 / mesh.spacing(0);
  const double hy = 0.5 / mesh.spacing(1);
  for (long j = 0; j < nj; ++j) {
    for (long i = 0; i < ni; ++i) {
      const double div = (u(0, i + 1, j) - u(0, i - 1, j)) * hx + (u(1, i, j + 1) - u(1, i, j - 1)) * hy;
      const std::size_t cell = mesh.linear_index(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      rhs(0, cell) -= coeffs(0, cell) * div;
      rhs(1, cell) -= coeffs(1, cell) * div;
    }
  }
}

Field induction_rhs(const Field& b, const Field& velocity) {
  if (!b.mesh().fully_periodic()) throw UnsupportedConfiguration("the induction model runs on periodic meshes only");
  FvSolver solver(std::make_shared<Induction2d>(), SchemeOrder::from_order(1), b.mesh_ptr());
  solver.set_coefficients(velocity);
  Field out(b.mesh_ptr(), 2);
  solver.rhs(b, 0.0, out);
  return out;
}

std::array<double, 2> induction_initial_at(double x, double y, InductionInitial kind) {
  const double sx = std::sin(kTwoPi * x), cx = std::cos(kTwoPi * x);
  const double sy = std::sin(kTwoPi * y), cy = std::cos(kTwoPi * y);
  if (kind == InductionInitial::Curl) return {sx * cy + 1.0, 1.0 - cx * sy};
  return {sx * cy + 1.0, cx * sy - 1.0};
}

Field induction_initial(const MeshPtr& mesh, InductionInitial kind) {
  if (mesh->dimension() != 2) throw ArgumentError("induction initial data needs a 2-D mesh");
  Field f(mesh, 2);
  for (std::size_t n = 0; n < f.cells(); ++n) {
    const Point3 c = mesh->cell_center_of(n);
    const auto b = induction_initial_at(c[0], c[1], kind);
    f(0, n) = b[0];
    f(1, n) = b[1];
  }
  return f;
}

std::array<double, 2> induction_mean_velocity(double x, double y) {
  const double sx = std::sin(kTwoPi * x), cx = std::cos(kTwoPi * x);
  const double sy = std::sin(kTwoPi * y), cy = std::cos(kTwoPi * y);
  return {1.0 + (cx + 2.0 * sy) / 4.0, 1.0 + (sx + 2.0 * cy) / 4.0};
}

Field discrete_divergence(const Field& b) {
  const StructuredMesh& mesh = b.mesh();
  if (b.components() < 2 || mesh.dimension() != 2) throw ArgumentError("discrete_divergence needs a 2-D vector field");
  Field out(b.mesh_ptr(), 1);
  const std::size_t ni = mesh.extent(0), nj = mesh.extent(1);
  const double hx = 0.5 / mesh.spacing(0), hy = 0.5 / mesh.spacing(1);
  for (std::size_t j = 0; j < nj; ++j) {
    const std::size_t jp = (j + 1) % nj, jm = (j + nj - 1) % nj;
    for (std::size_t i = 0; i < ni; ++i) {
      const std::size_t ip = (i + 1) % ni, im = (i + ni - 1) % ni;
      out.at(0, i, j) = (b.at(0, ip, j) - b.at(0, im, j)) * hx + (b.at(1, i, jp) - b.at(1, i, jm)) * hy;
    }
  }
  return out;
}

double induction_eig_bound(const OUFieldParams& u, const OUFieldParams& v, double t_end) {
  return pair_eig_bound(u, v, t_end);
}

// ---------------------------------------------------------------------------

ModelSpec scalar_model(double indicator_lo, double indicator_hi) {
  ModelSpec m;
  m.name = "scalar_ou";
  m.components = 1;
  m.dimension = 1;
  m.coefficients = {"a"};
  m.conservative = true;
  m.law = std::make_shared<ScalarAdvection>();
  m.initial = [indicator_lo, indicator_hi](const MeshPtr& mesh) {
    return indicator_cell_averages(mesh, indicator_lo, indicator_hi);
  };
  return m;
}

ModelSpec acoustics_model(const AcousticsParams& params, BoundarySpec boundary) {
  ModelSpec m;
  m.name = "acoustics2d";
  m.components = 3;
  m.dimension = 2;
  m.coefficients = {"u0", "v0"};
  m.conservative = true;
  m.law = std::make_shared<Acoustics2d>(params);
  m.initial = [](const MeshPtr& mesh) { return Field(mesh, 3); };
  m.boundary = std::move(boundary);
  return m;
}

ModelSpec induction_model(InductionInitial initial) {
  ModelSpec m;
  m.name = "induction2d";
  m.components = 2;
  m.dimension = 2;
  m.coefficients = {"u", "v"};
  m.conservative = false;
  m.law = std::make_shared<Induction2d>();
  m.initial = [initial](const MeshPtr& mesh) { return induction_initial(mesh, initial); };
  return m;
}

}  // namespace stochfv
