#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "stochfv/config.hpp"
#include "stochfv/errors.hpp"
#include "stochfv/problem.hpp"

using namespace stochfv;

namespace {

std::string error_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config_text(text, overrides, "test.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Presets, ShippedScenariosExist) {
  const auto& p = scenario_presets();
  EXPECT_EQ(p.count("paper-4.1"), 1u);
  EXPECT_EQ(p.count("paper-4.2"), 1u);
  EXPECT_EQ(p.count("paper-4.3"), 1u);
}

TEST(Presets, ScalarScenario) {
  const SimConfig c = parse_config_text("scenario = paper-4.1\n");
  EXPECT_EQ(c.model, "scalar_ou");
  const auto& a = c.ou.at("a");
  EXPECT_EQ(a.theta, 20.0);
  EXPECT_EQ(a.sigma, 0.5);
  EXPECT_EQ(a.mu, "const:0.25");
  EXPECT_EQ(a.z0, "const:-0.25");
  EXPECT_EQ(c.scalar_initial, "indicator:0.375,0.625");
  EXPECT_EQ(c.xmin, 0.0);
  EXPECT_EQ(c.xmax, 1.0);
  const auto sp = scalar_ou_params(c);
  EXPECT_EQ(sp.a0, -0.25);
  EXPECT_EQ(sp.mu, 0.25);
  const MeshPtr mesh = build_mesh(c);
  EXPECT_TRUE(mesh->fully_periodic());
  EXPECT_EQ(mesh->extent(0), 128u);
}

TEST(Presets, AcousticsScenarioIntervalIsDxOverTwoC0) {
  const SimConfig c = parse_config_text("scenario = paper-4.2\n");
  EXPECT_EQ(c.rho0, 1.0);
  EXPECT_EQ(c.K0, 1.0);
  for (const char* n : {"u0", "v0"}) {
    EXPECT_EQ(c.ou.at(n).theta, 1.0);
    EXPECT_EQ(c.ou.at(n).sigma, 1.0);
    EXPECT_EQ(c.ou.at(n).mu, "const:0");
    EXPECT_EQ(c.ou.at(n).z0, "const:0");
  }
  EXPECT_EQ(c.grf_q, 2.0);
  EXPECT_EQ(c.grf_l, 4.0);
  const BuiltProblem b = build_problem(c);
  const double dx = 1.0 / static_cast<double>(c.nx);
  EXPECT_DOUBLE_EQ(b.lambda_hat, 2.0);
  EXPECT_DOUBLE_EQ(b.h_rule, dx / 2.0);
}

TEST(Presets, InductionScenario) {
  const SimConfig c = parse_config_text("scenario = paper-4.3\n");
  EXPECT_EQ(c.model, "induction2d");
  for (const char* n : {"u", "v"}) {
    EXPECT_EQ(c.ou.at(n).theta, 1.0);
    EXPECT_EQ(c.ou.at(n).sigma, 10.0);
    EXPECT_EQ(c.ou.at(n).z0, "mean");
  }
  EXPECT_EQ(c.xmin, -0.5);
  EXPECT_EQ(c.ymax, 0.5);
  const BuiltProblem b = build_problem(c);
  EXPECT_DOUBLE_EQ(b.h_rule, 1.0 / static_cast<double>(c.nx) / 4.0);
  EXPECT_TRUE(b.problem.mesh->fully_periodic());
  // Z(x, 0) = mu(x)
  EXPECT_EQ(b.problem.coefficients[0].z0, b.problem.coefficients[0].mu);
  const auto v = induction_mean_velocity(-0.5 + 0.5 / 64, -0.5 + 0.5 / 64);
  EXPECT_DOUBLE_EQ(b.problem.coefficients[1].mu(0, 0), v[1]);
}

TEST(Presets, ScalarIntervalIsTwoDx) {
  const SimConfig c = parse_config_text("scenario = paper-4.1\n", {"mesh.nx=64"});
  const BuiltProblem b = build_problem(c);
  EXPECT_DOUBLE_EQ(b.h_rule, 2.0 / 64.0);
}

TEST(Presets, BareModelLoadsMatchingScenario) {
  const SimConfig c = parse_config_text("model = acoustics2d\n");
  EXPECT_EQ(c.acoustics_boundary, "source");
  EXPECT_EQ(c.order, 2);
}

TEST(Config, OverridesApplyLast) {
  const SimConfig c = parse_config_text("scenario = paper-4.1\nfv.order = 1\n", {"fv.order=2", "mc.seed = 17"});
  EXPECT_EQ(c.order, 2);
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(SchemeOrder::from_order(c.order).reconstruction, Reconstruction::MinmodLinear);
  EXPECT_EQ(resolve_integrator(c), OuIntegrator::WeakOrder2);
}

TEST(Config, UnknownKeySuggestsNearest) {
  const std::string e = error_of("scenario = paper-4.1\nfv.ordr = 2\n");
  EXPECT_NE(e.find("test.cfg:2"), std::string::npos) << e;
  EXPECT_NE(e.find("fv.order"), std::string::npos) << e;
  const std::string s = error_of("scenario = paper-4.9\n");
  EXPECT_NE(s.find("paper-4.1"), std::string::npos) << s;
}

TEST(Config, InvalidValuesReportTheirLine) {
  const std::string e = error_of("# comment\n\nscenario = paper-4.1\nfv.cfl = 0.9\n");
  EXPECT_NE(e.find("test.cfg:4"), std::string::npos) << e;
  const std::string o = error_of("scenario = paper-4.1\n", {"mesh.nx=64", "fv.order=3"});
  EXPECT_NE(o.find("--set #2"), std::string::npos) << o;
  EXPECT_FALSE(error_of("fv.t_end = -1\n").empty());
  EXPECT_FALSE(error_of("ou.a.theta = 0\n").empty());
  EXPECT_FALSE(error_of("mc.samples = 1\n").empty());
  EXPECT_FALSE(error_of("converge.resolutions = 64,32\n").empty());
  EXPECT_FALSE(error_of("this line has no equals\n").empty());
  EXPECT_FALSE(error_of("domain.xmax = -1\n").empty());
}

TEST(Config, EchoRoundTrips) {
  for (const char* s : {"paper-4.1", "paper-4.2", "paper-4.3"}) {
    const SimConfig c = parse_config_text(std::string("scenario = ") + s + "\n", {"mc.seed=5", "output.formats=csv"});
    const SimConfig again = parse_config_text(echo_config(c));
    EXPECT_TRUE(again == c) << s;
  }
  SimConfig odd = parse_config_text("scenario = paper-4.1\n", {"fv.t_end=0.1", "sde.h_dx_ratio=0.3"});
  EXPECT_TRUE(parse_config_text(echo_config(odd)) == odd);
}

TEST(Config, EchoListsEveryKey) {
  const std::string echo = echo_config(parse_config_text("scenario = paper-4.1\n"));
  for (const auto& k : known_keys()) {
    if (k == "mesh.n") continue;
    EXPECT_NE(echo.find(k + " = "), std::string::npos) << k;
  }
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_THROW(parse_config("/nonexistent/dir/none.cfg"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "stochfv_cfg_test.cfg";
  {
    std::ofstream os(path);
    os << "scenario = paper-4.1\nmesh.nx = 32\n";
  }
  EXPECT_EQ(parse_config(path).nx, 32u);
  std::filesystem::remove(path);
}

TEST(Problem, RestrictAverageNests) {
  const auto fine = StructuredMesh::uniform(2, 8, 0.0, 1.0);
  const auto coarse = StructuredMesh::uniform(2, 4, 0.0, 1.0);
  Field f(fine, 1);
  for (std::size_t j = 0; j < 8; ++j)
    for (std::size_t i = 0; i < 8; ++i) f.at(0, i, j) = static_cast<double>(i + 10 * j);
  const Field c = restrict_average(f, coarse);
  EXPECT_DOUBLE_EQ(c.at(0, 0, 0), (0 + 1 + 10 + 11) / 4.0);
  EXPECT_DOUBLE_EQ(c.at(0, 3, 2), (46 + 47 + 56 + 57) / 4.0);
  EXPECT_THROW(restrict_average(f, StructuredMesh::uniform(2, 3, 0.0, 1.0)), ArgumentError);
}
