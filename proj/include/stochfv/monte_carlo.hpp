#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stochfv/fv_core.hpp"
#include "stochfv/grid.hpp"
#include "stochfv/models.hpp"
#include "stochfv/moments.hpp"
#include "stochfv/ou_sde.hpp"
#include "stochfv/random_field.hpp"

namespace stochfv {

/// Sample-count rule: an explicit M or M = ceil(kappa * dx^(-power)), optionally capped. The
/// power defaults to 2 * order.
struct SampleRule {
  enum class Kind { Explicit, PaperRule };
  Kind kind = Kind::Explicit;
  std::size_t samples = 100;
  double kappa = 1.0;
  std::optional<int> order;
  std::optional<double> power;
  std::optional<std::size_t> cap;

  static SampleRule explicit_count(std::size_t m);
  static SampleRule paper(double kappa, std::optional<int> order = std::nullopt,
                          std::optional<std::size_t> cap = std::nullopt);
  /// `<int>` or `rule:kappa=<v>[,order=<o>][,power=<p>][,cap=<n>]`.
  static SampleRule parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const SampleRule&, const SampleRule&) = default;
};

std::size_t plan_samples(const SampleRule& rule, double dx, int order);

/// One Monte Carlo worker: maps a sample index to a terminal field. Owned by one thread.
class SampleWorker {
 public:
  virtual ~SampleWorker() = default;
  virtual const Field& solve(std::uint64_t index) = 0;
  virtual const CflStats& cfl_stats() const = 0;
};

class SampleSolver {
 public:
  virtual ~SampleSolver() = default;
  virtual MeshPtr mesh() const = 0;
  virtual std::size_t components() const = 0;
  virtual std::unique_ptr<SampleWorker> make_worker() const = 0;
};

enum class NoiseKind {
  Scalar,  // one N(0,1) per step, broadcast over the mesh
  Field,   // Gaussian random field per step
};

/// Stochastic coefficient problem: an OU field per coefficient component driving a frozen-
/// coefficient finite-volume solve on each SDE interval.
struct StochasticProblem {
  ModelSpec model;
  MeshPtr mesh;
  SchemeOrder scheme;
  std::vector<OUFieldParams> coefficients;
  NoiseKind noise = NoiseKind::Field;
  SpectralDensity density = SpectralDensity::rational(2.0, 4.0);
  OuIntegrator integrator = OuIntegrator::Milstein;
  double t_end = 1.0;
  double h_target = 0.1;
  double cfl = 0.45;
  std::uint64_t seed = 0;
  /// Skip the PDE and report the coefficient fields at t_end as the sample.
  bool identity_pde = false;

  void validate() const;
};

/// Per-sample state and scratch for a StochasticProblem.
class ProblemWorker final : public SampleWorker {
 public:
  explicit ProblemWorker(const StochasticProblem& problem);

  const Field& solve(std::uint64_t index) override;
  const CflStats& cfl_stats() const override { return stats_; }

  /// Coefficient fields (one component per coefficient) at the end of the last solve.
  const Field& coefficients() const noexcept { return coeffs_; }
  const TimeController& controller() const noexcept { return controller_; }

 private:
  void draw_noise(std::uint64_t index, std::uint64_t step, std::size_t parameter);
  void pack_coefficients();

  const StochasticProblem& problem_;
  TimeController controller_;
  std::optional<FvSolver> solver_;
  std::optional<GrfSampler> sampler_;
  std::vector<OUState> ou_;
  Field noise_;
  Field coeffs_;
  Field u_;
  CflStats stats_;
};

class ProblemSolver final : public SampleSolver {
 public:
  explicit ProblemSolver(StochasticProblem problem);

  const StochasticProblem& problem() const noexcept { return problem_; }
  MeshPtr mesh() const override { return problem_.mesh; }
  std::size_t components() const override;
  std::unique_ptr<SampleWorker> make_worker() const override;

 private:
  StochasticProblem problem_;
};

struct McOptions {
  std::size_t threads = 1;
  bool skip_failed = false;
  bool progress = false;
  /// Samples per reduction block. Results depend on this value but never on `threads`.
  std::size_t block_size = 16;
};

struct RunStats {
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::vector<std::uint64_t> skipped_indices;
  std::size_t threads = 1;
  double wall_seconds = 0.0;
  double seconds_per_sample = 0.0;
  CflStats cfl;
};

struct McResult {
  MomentAccumulator moments;
  RunStats stats;

  Field mean() const { return moments.mean(); }
  Field variance() const { return moments.variance(); }
};

/// Runs samples [0, samples) and folds them into one accumulator.
McResult run_mc(const SampleSolver& solver, std::size_t samples, std::uint64_t seed, const McOptions& options = {});

std::size_t default_thread_count();

enum class Norm { L1, L2 };

struct ErrorReport {
  double absolute = 0.0;
  double relative_percent = 0.0;
  bool relative_defined = true;
};

ErrorReport error_report(const Field& value, const Field& reference, Norm norm, std::size_t component = 0);

}  // namespace stochfv
