#include "stochfv/problem.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "stochfv/errors.hpp"

namespace stochfv {

namespace {

double const_value(const std::string& spec) { return std::stod(spec.substr(6)); }

bool is_const(const std::string& spec) { return spec.rfind("const:", 0) == 0; }

Field field_from_spec(const std::string& spec, const MeshPtr& mesh) {
  if (is_const(spec)) return Field(mesh, 1, const_value(spec));
  if (spec == "induction_mu_u" || spec == "induction_mu_v") {
    if (mesh->dimension() != 2) throw ConfigError(spec + " needs a 2-D mesh");
    const std::size_t c = spec == "induction_mu_u" ? 0 : 1;
    Field f(mesh, 1);
    for (std::size_t n = 0; n < f.cells(); ++n) {
      const Point3 x = mesh->cell_center_of(n);
      f(0, n) = induction_mean_velocity(x[0], x[1])[c];
    }
    return f;
  }
  throw ConfigError("cannot build a field from '" + spec + "'");
}

OUFieldParams coefficient_params(const SimConfig& config, const std::string& name, const MeshPtr& mesh) {
  const OuCoefficientConfig& oc = config.ou.at(name);
  OUFieldParams p;
  p.theta = oc.theta;
  p.sigma = oc.sigma;
  p.mu = field_from_spec(oc.mu, mesh);
  p.z0 = oc.z0 == "mean" ? p.mu : field_from_spec(oc.z0, mesh);
  p.validate();
  return p;
}

Field sine_cell_averages(const MeshPtr& mesh, double lower, double period) {
  Field f(mesh, 1);
  const double k = 2.0 * std::numbers::pi / period;
  const double dx = mesh->spacing(0);
  for (std::size_t n = 0; n < f.cells(); ++n) {
    const double c = mesh->cell_center_of(n)[0] - lower;
    f(0, n) = (std::cos(k * (c - 0.5 * dx)) - std::cos(k * (c + 0.5 * dx))) / (k * dx);
  }
  return f;
}

}  // namespace

MeshPtr build_mesh(const SimConfig& config, std::optional<std::size_t> resolution) {
  const std::size_t nx = resolution.value_or(config.nx);
  const std::size_t ny = resolution.value_or(config.ny);
  if (config.model == "scalar_ou") {
    return std::make_shared<const StructuredMesh>(1, Index3{nx, 1, 1},
                                                  Point3{(config.xmax - config.xmin) / static_cast<double>(nx), 1, 1},
                                                  Point3{config.xmin, 0, 0});
  }
  BoundarySpec boundary{};
  if (config.model == "acoustics2d" && config.acoustics_boundary == "source") {
    boundary[0] = {BoundaryCondition::dirichlet(acoustics_left_pulse()), BoundaryCondition::neumann_copy()};
    boundary[1] = AxisBoundary::neumann_copy();
  }
  return std::make_shared<const StructuredMesh>(
      2, Index3{nx, ny, 1},
      Point3{(config.xmax - config.xmin) / static_cast<double>(nx), (config.ymax - config.ymin) / static_cast<double>(ny),
             1},
      Point3{config.xmin, config.ymin, 0}, boundary);
}

OuIntegrator resolve_integrator(const SimConfig& config) {
  if (config.integrator == "auto") return config.order == 2 ? OuIntegrator::WeakOrder2 : OuIntegrator::Milstein;
  return parse_ou_integrator(config.integrator);
}

SpectralDensity build_density(const SimConfig& config) {
  if (config.grf_kind == "rational") return SpectralDensity::rational(config.grf_q, config.grf_l);
  if (config.grf_kind == "exponential") return SpectralDensity::exponential(config.grf_corr_length);
  return SpectralDensity::load_table(config.grf_table);
}

ScalarOuParams scalar_ou_params(const SimConfig& config) {
  const OuCoefficientConfig& oc = config.ou.at("a");
  if (!is_const(oc.mu) || !(is_const(oc.z0) || oc.z0 == "mean")) {
    throw ConfigError("the scalar model needs constant ou.a.mu and ou.a.z0");
  }
  ScalarOuParams p;
  p.mu = const_value(oc.mu);
  p.theta = oc.theta;
  p.sigma = oc.sigma;
  p.a0 = oc.z0 == "mean" ? p.mu : const_value(oc.z0);
  return p;
}

InitialProfile scalar_profile(const SimConfig& config) {
  const double period = config.xmax - config.xmin;
  if (config.scalar_initial == "sine") {
    const double k = 2.0 * std::numbers::pi / period;
    const double lower = config.xmin;
    return InitialProfile::from_function([k, lower](double x) { return std::sin(k * (x - lower)); }, config.xmin,
                                         period);
  }
  const std::string rest = config.scalar_initial.substr(10);
  const auto comma = rest.find(',');
  return InitialProfile::indicator(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)), config.xmin,
                                   period);
}

BuiltProblem build_problem(const SimConfig& config, std::optional<std::size_t> resolution) {
  validate(config);
  BuiltProblem out;
  StochasticProblem& p = out.problem;
  p.mesh = build_mesh(config, resolution);
  p.scheme = SchemeOrder::from_order(config.order);
  p.integrator = resolve_integrator(config);
  p.t_end = config.t_end;
  p.cfl = config.cfl;
  p.seed = config.seed;
  const double dx = p.mesh->min_spacing();

  if (config.model == "scalar_ou") {
    p.model = scalar_model();
    if (config.scalar_initial == "sine") {
      const double lower = config.xmin, period = config.xmax - config.xmin;
      p.model.initial = [lower, period](const MeshPtr& mesh) { return sine_cell_averages(mesh, lower, period); };
    } else {
      const InitialProfile prof = scalar_profile(config);
      p.model.initial = [prof](const MeshPtr& mesh) { return indicator_cell_averages(mesh, prof.lo, prof.hi); };
    }
    const ScalarOuParams sp = scalar_ou_params(config);
    p.coefficients.push_back(OUFieldParams::uniform(p.mesh, sp.theta, sp.sigma, sp.mu, sp.a0));
    p.noise = NoiseKind::Scalar;
    out.lambda_hat = scalar_eig_bound(sp.theta, sp.mu, sp.a0, config.t_end);
  } else if (config.model == "acoustics2d") {
    const AcousticsParams ap = AcousticsParams::make(config.rho0, config.K0);
    p.model = acoustics_model(ap, p.mesh->boundary());
    p.coefficients.push_back(coefficient_params(config, "u0", p.mesh));
    p.coefficients.push_back(coefficient_params(config, "v0", p.mesh));
    p.noise = NoiseKind::Field;
    p.density = build_density(config);
    out.lambda_hat = acoustics_eig_bound(p.coefficients[0], p.coefficients[1], ap, config.t_end);
  } else {
    const InductionInitial init =
        config.induction_initial == "curl" ? InductionInitial::Curl : InductionInitial::Gradient;
    p.model = induction_model(init);
    p.coefficients.push_back(coefficient_params(config, "u", p.mesh));
    p.coefficients.push_back(coefficient_params(config, "v", p.mesh));
    p.noise = NoiseKind::Field;
    p.density = build_density(config);
    out.lambda_hat = induction_eig_bound(p.coefficients[0], p.coefficients[1], config.t_end);
  }

  if (config.h_dx_ratio) {
    out.h_rule = *config.h_dx_ratio * dx;
    out.lambda_hat = 0.0;
  } else {
    if (!(out.lambda_hat > 0.0)) {
      throw ConfigError("expected wave speed bound is zero; set sde.h_dx_ratio to size the SDE interval");
    }
    out.h_rule = sde_interval(config.h_factor, dx, out.lambda_hat);
  }
  p.h_target = out.h_rule;

  for (const auto& c : p.coefficients) {
    if (auto w = stiffness_warning(p.integrator, out.h_rule, c.theta)) out.warnings.push_back(*w);
  }
  p.validate();
  return out;
}

Field restrict_average(const Field& fine, const MeshPtr& coarse) {
  const StructuredMesh& fm = fine.mesh();
  if (fm.dimension() != coarse->dimension()) throw ArgumentError("restrict_average: dimension mismatch");
  Index3 ratio{1, 1, 1};
  for (int a = 0; a < fm.dimension(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (fm.extent(a) % coarse->extent(a) != 0) throw ArgumentError("restrict_average: extents do not nest");
    ratio[ua] = fm.extent(a) / coarse->extent(a);
  }
  Field out(coarse, fine.components());
  const double inv = 1.0 / static_cast<double>(ratio[0] * ratio[1] * ratio[2]);
  const auto& fe = fm.extents();
  for (std::size_t c = 0; c < fine.components(); ++c) {
    for (std::size_t k = 0; k < fe[2]; ++k) {
      for (std::size_t j = 0; j < fe[1]; ++j) {
        for (std::size_t i = 0; i < fe[0]; ++i) {
          out.at(c, i / ratio[0], j / ratio[1], k / ratio[2]) += inv * fine.at(c, i, j, k);
        }
      }
    }
  }
  return out;
}

}  // namespace stochfv
