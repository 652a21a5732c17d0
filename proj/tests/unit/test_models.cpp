#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stochfv/errors.hpp"
#include "stochfv/models.hpp"

using namespace stochfv;

namespace {

const AcousticsParams kUnit = AcousticsParams::make(1.0, 1.0);

double max_abs(const Field& f) {
  double m = 0;
  for (double v : f.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(ScalarFlux, Upwind) {
  EXPECT_EQ(scalar_flux_upwind(1, 0, 1), 1);
  EXPECT_EQ(scalar_flux_upwind(1, 0, -1), 0);
  EXPECT_EQ(scalar_flux_upwind(3, 7, 0), 0);
  EXPECT_EQ(scalar_flux_upwind(2, 5, -0.5), -2.5);
}

TEST(ScalarModel, IndicatorAveragesAreExactOverlaps) {
  const auto mesh = StructuredMesh::uniform(1, 8, 0.0, 1.0);
  const Field f = indicator_cell_averages(mesh, 0.375, 0.625);
  for (std::size_t n = 0; n < 8; ++n) EXPECT_EQ(f(0, n), (n == 3 || n == 4) ? 1.0 : 0.0);
  const Field g = indicator_cell_averages(StructuredMesh::uniform(1, 4, 0.0, 1.0), 0.375, 0.625);
  EXPECT_DOUBLE_EQ(g(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(g(0, 2), 0.5);
  EXPECT_DOUBLE_EQ(l1_norm(g, 0), 0.25);
}

TEST(ScalarModel, EigBoundIsSupOfMean) {
  // E a(t) moves monotonically from a0 to mu.
  EXPECT_DOUBLE_EQ(scalar_eig_bound(20, 0.25, -0.25, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(scalar_eig_bound(1, 0.1, 2.0, 1.0), 2.0);
  EXPECT_NEAR(scalar_eig_bound(1, 0.0, 0.0, 1.0), 0.0, 0.0);
}

TEST(AcousticsParams, SoundSpeed) {
  EXPECT_DOUBLE_EQ(AcousticsParams::make(4.0, 1.0).c0, 0.5);
  EXPECT_THROW(AcousticsParams::make(0.0, 1.0), ConfigError);
}

TEST(AcousticsFlux, HllHandExample) {
  const State3 f = acoustics_flux_hll({1, 0, 0}, {0, 0, 0}, {1, 0}, 0.0, 0.0, kUnit);
  EXPECT_DOUBLE_EQ(f[0], 0.5);
  EXPECT_DOUBLE_EQ(f[1], 0.5);
  EXPECT_DOUBLE_EQ(f[2], 0.0);
}

TEST(AcousticsFlux, SupersonicUsesLeftFlux) {
  const State3 l{0.3, -1.2, 0.4}, r{2.0, 1.0, -3.0};
  EXPECT_EQ(acoustics_flux_hll(l, r, {1, 0}, 2.0, 0.1, kUnit), acoustics_physical_flux(l, {1, 0}, 2.0, 0.1, kUnit));
  EXPECT_EQ(acoustics_flux_hll(l, r, {0, 1}, 0.0, -2.0, kUnit), acoustics_physical_flux(r, {0, 1}, 0.0, -2.0, kUnit));
}

TEST(AcousticsFlux, ConsistencyAndHyperbolicity) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0), pos(0.2, 3.0);
  for (int k = 0; k < 200; ++k) {
    const AcousticsParams p = AcousticsParams::make(pos(gen), pos(gen));
    const State3 u{d(gen), d(gen), d(gen)};
    const double u0 = d(gen), v0 = d(gen);
    for (const std::array<double, 2> w : {std::array<double, 2>{1, 0}, std::array<double, 2>{0, 1}}) {
      const State3 a = acoustics_physical_flux(u, w, u0, v0, p);
      const State3 h = acoustics_flux_hll(u, u, w, u0, v0, p);
      for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(h[c], a[c], 1e-13 * (1 + std::abs(a[c])));
      EXPECT_LE(acoustics_hyperbolicity_residual(w, u0, v0, p), 1e-12);
    }
  }
}

TEST(AcousticsFlux, ZeroSoundSpeedIsConfigError) {
  AcousticsParams p{1.0, 0.0, 0.0};
  EXPECT_THROW(acoustics_flux_hll({1, 0, 0}, {0, 0, 0}, {1, 0}, 0.0, 0.0, p), ConfigError);
}

TEST(AcousticsModel, EigBoundExamples) {
  const auto mesh = StructuredMesh::uniform(2, 8, 0.0, 1.0);
  const auto zero = OUFieldParams::uniform(mesh, 1, 1, 0, 0);
  EXPECT_DOUBLE_EQ(acoustics_eig_bound(zero, zero, kUnit, 1.5), 2.0);
  const auto u = OUFieldParams::uniform(mesh, 1, 1, 0.3, 0.3);
  EXPECT_DOUBLE_EQ(acoustics_eig_bound(u, zero, kUnit, 1.5), 2.3);
  const Acoustics2d law(kUnit);
  Field c(mesh, 2);
  c(0, 3) = -0.7;
  c(1, 5) = 0.2;
  const Point3 l = law.max_abs_eigenvalues(c);
  EXPECT_DOUBLE_EQ(l[0], 1.7);
  EXPECT_DOUBLE_EQ(l[1], 1.2);
}

TEST(AcousticsModel, LeftPulse) {
  const auto pulse = acoustics_left_pulse();
  std::array<double, 3> v{9, 9, 9};
  pulse({-0.01, 0.52, 0}, 0.125, v);
  EXPECT_DOUBLE_EQ(v[0], 0.0);
  EXPECT_DOUBLE_EQ(v[1], 1.0);
  EXPECT_DOUBLE_EQ(v[2], 0.0);
  pulse({-0.01, 0.6, 0}, 0.125, v);
  EXPECT_DOUBLE_EQ(v[1], 0.0);
}

TEST(AcousticsModel, RegistryShape) {
  const ModelSpec m = acoustics_model(kUnit, {});
  EXPECT_EQ(m.components, 3u);
  EXPECT_EQ(m.dimension, 2);
  EXPECT_EQ(m.coefficients, (std::vector<std::string>{"u0", "v0"}));
  const Field init = m.initial(StructuredMesh::uniform(2, 4, 0.0, 1.0));
  EXPECT_EQ(max_abs(init), 0.0);
}

TEST(Induction, InitialDataValues) {
  const auto a = induction_initial_at(0.0, 0.0);
  EXPECT_DOUBLE_EQ(a[0], 1.0);
  EXPECT_DOUBLE_EQ(a[1], -1.0);
  const auto b = induction_initial_at(0.25, 0.25);
  EXPECT_NEAR(b[0], 1.0, 1e-15);
  EXPECT_NEAR(b[1], -1.0, 1e-15);
}

TEST(Induction, MeanVelocityValues) {
  const auto a = induction_mean_velocity(0.0, 0.0);
  EXPECT_DOUBLE_EQ(a[0], 1.25);
  EXPECT_DOUBLE_EQ(a[1], 1.5);
  const auto b = induction_mean_velocity(0.25, 0.0);
  EXPECT_NEAR(b[0], 1.0, 1e-15);
  EXPECT_NEAR(b[1], 1.75, 1e-15);
}

TEST(Induction, CurlInitialIsDiscretelyDivergenceFree) {
  const auto mesh = StructuredMesh::uniform(2, 128, -0.5, 0.5);
  const Field b = induction_initial(mesh, InductionInitial::Curl);
  const double dx = mesh->spacing(0);
  EXPECT_LE(max_abs(discrete_divergence(b)), dx * dx);
  // the literal gradient field carries an O(1) divergence
  EXPECT_GT(max_abs(discrete_divergence(induction_initial(mesh))), 1.0);
}

TEST(Induction, RhsVanishesForTrivialInputs) {
  const auto mesh = StructuredMesh::uniform(2, 16, -0.5, 0.5);
  const Field b = induction_initial(mesh);
  EXPECT_EQ(max_abs(induction_rhs(b, Field(mesh, 2, 0.0))), 0.0);
  Field v(mesh, 2);
  for (std::size_t n = 0; n < v.cells(); ++n) {
    v(0, n) = 0.7;
    v(1, n) = -1.3;
  }
  Field c(mesh, 2);
  for (std::size_t n = 0; n < c.cells(); ++n) {
    c(0, n) = 2.0;
    c(1, n) = -0.5;
  }
  EXPECT_LE(max_abs(induction_rhs(c, v)), 1e-13);
}

TEST(Induction, ConstantVelocityIsPureTransport) {
  // div(v) = 0 and V constant: the symmetric form reduces to B_t + (v . grad) B = 0, upwinded.
  const auto mesh = StructuredMesh::uniform(2, 8, 0.0, 1.0);
  Field v(mesh, 2);
  for (std::size_t n = 0; n < v.cells(); ++n) v(0, n) = 1.0;
  Field b(mesh, 2);
  b.at(0, 3, 2) = 1.0;
  const Field r = induction_rhs(b, v);
  // the source cancels the centered part, leaving first-order upwind transport
  EXPECT_DOUBLE_EQ(r.at(0, 2, 2), 0.0);
  EXPECT_DOUBLE_EQ(r.at(0, 3, 2), -8.0);
  EXPECT_DOUBLE_EQ(r.at(0, 4, 2), 8.0);
  for (std::size_t n = 0; n < r.cells(); ++n) EXPECT_EQ(r(1, n), 0.0);
}

TEST(Induction, NonPeriodicMeshIsUnsupported) {
  BoundarySpec bs{};
  bs[0] = AxisBoundary::neumann_copy();
  const auto mesh = StructuredMesh::uniform(2, 8, 0.0, 1.0, bs);
  EXPECT_THROW(induction_rhs(Field(mesh, 2), Field(mesh, 2)), UnsupportedConfiguration);
}

TEST(Induction, EigBoundUsesMeanPath) {
  const auto mesh = StructuredMesh::uniform(2, 4, 0.0, 1.0);
  const auto u = OUFieldParams::uniform(mesh, 1, 10, 1.25, 1.25);
  const auto v = OUFieldParams::uniform(mesh, 1, 10, -0.5, -0.5);
  EXPECT_DOUBLE_EQ(induction_eig_bound(u, v, 0.75), 1.75);
}

TEST(Registry, ScalarAndInduction) {
  const ModelSpec s = scalar_model();
  EXPECT_EQ(s.dimension, 1);
  EXPECT_EQ(s.coefficients, std::vector<std::string>{"a"});
  const Field u0 = s.initial(StructuredMesh::uniform(1, 8, 0.0, 1.0));
  EXPECT_EQ(u0(0, 3), 1.0);
  const ModelSpec i = induction_model(InductionInitial::Curl);
  EXPECT_FALSE(i.conservative);
  EXPECT_EQ(i.components, 2u);
}
