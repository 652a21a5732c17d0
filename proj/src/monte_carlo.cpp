#include "stochfv/monte_carlo.hpp"

#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "stochfv/errors.hpp"
#include "stochfv/rng.hpp"

namespace stochfv {

SampleRule SampleRule::explicit_count(std::size_t m) {
  SampleRule r;
  r.kind = Kind::Explicit;
  r.samples = m;
  return r;
}

SampleRule SampleRule::paper(double kappa, std::optional<int> order, std::optional<std::size_t> cap) {
  if (!(kappa > 0.0)) throw ConfigError("sample rule needs kappa > 0");
  if (order && *order != 1 && *order != 2) throw ConfigError("sample rule order must be 1 or 2");
  SampleRule r;
  r.kind = Kind::PaperRule;
  r.kappa = kappa;
  r.order = order;
  r.cap = cap;
  return r;
}

SampleRule SampleRule::parse(const std::string& text) {
  const std::string prefix = "rule:";
  if (text.rfind(prefix, 0) != 0) {
    std::size_t pos = 0;
    unsigned long long m = 0;
    try {
      m = std::stoull(text, &pos);
    } catch (const std::exception&) {
      throw ConfigError("expected a sample count or rule:kappa=<v>, got '" + text + "'");
    }
    if (pos != text.size() || text.find('-') != std::string::npos) {
      throw ConfigError("expected a sample count, got '" + text + "'");
    }
    return explicit_count(static_cast<std::size_t>(m));
  }
  std::optional<double> kappa;
  std::optional<int> order;
  std::optional<double> power;
  std::optional<std::size_t> cap;
  std::stringstream ss(text.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed sample rule item '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "kappa") {
        kappa = std::stod(value);
      } else if (key == "order") {
        order = std::stoi(value);
      } else if (key == "power") {
        power = std::stod(value);
      } else if (key == "cap") {
        cap = static_cast<std::size_t>(std::stoull(value));
      } else {
        throw ConfigError("unknown sample rule item '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError("malformed sample rule value '" + value + "'");
    }
  }
  if (!kappa) throw ConfigError("sample rule needs kappa");
  SampleRule r = paper(*kappa, order, cap);
  if (power) {
    if (!(*power > 0.0)) throw ConfigError("sample rule power must be positive");
    r.power = power;
  }
  return r;
}

std::string SampleRule::to_string() const {
  if (kind == Kind::Explicit) return std::to_string(samples);
  std::string s = fmt::format("rule:kappa={:.17g}", kappa);
  if (order) s += fmt::format(",order={}", *order);
  if (power) s += fmt::format(",power={:.17g}", *power);
  if (cap) s += fmt::format(",cap={}", *cap);
  return s;
}

std::size_t plan_samples(const SampleRule& rule, double dx, int order) {
  if (rule.kind == SampleRule::Kind::Explicit) return rule.samples;
  if (!(dx > 0.0)) throw ArgumentError("plan_samples needs dx > 0");
  const int o = rule.order.value_or(order);
  if (o != 1 && o != 2) throw ArgumentError("plan_samples needs order 1 or 2");
  const double p = rule.power.value_or(2.0 * o);
  const double raw = rule.kappa * std::pow(dx, -p);
  // Shave rounding noise so that e.g. 1 * 16^2 gives 256, not 257.
  std::size_t m = static_cast<std::size_t>(std::ceil(raw * (1.0 - 1e-12)));
  if (rule.cap) m = std::min(m, *rule.cap);
  return m;
}

// ---------------------------------------------------------------------------

void StochasticProblem::validate() const {
  if (!mesh) throw ConfigError("problem has no mesh");
  if (!model.law) throw ConfigError("problem has no model");
  if (coefficients.size() != model.law->coefficient_components()) {
    throw ConfigError(fmt::format("model {} needs {} coefficient fields, got {}", model.name,
                                  model.law->coefficient_components(), coefficients.size()));
  }
  for (const auto& c : coefficients) {
    c.validate();
    if (!c.mu.mesh().same_shape(*mesh)) throw ConfigError("coefficient parameters live on a different mesh");
  }
  scheme.validate();
  if (!(t_end >= 0.0)) throw ConfigError("final time must be non-negative");
  if (!(h_target > 0.0)) throw ConfigError("SDE interval must be positive");
  if (!(cfl > 0.0) || cfl > 0.5) throw ConfigError("CFL number must lie in (0, 1/2]");
}

ProblemWorker::ProblemWorker(const StochasticProblem& problem)
    : problem_(problem), controller_(problem.t_end, problem.h_target, problem.cfl) {
  const MeshPtr& mesh = problem_.mesh;
  if (!problem_.identity_pde) solver_.emplace(problem_.model.law, problem_.scheme, mesh);
  if (problem_.noise == NoiseKind::Field) sampler_.emplace(mesh->periodic_twin(), problem_.density, problem_.seed);
  noise_ = Field(mesh, 1);
  coeffs_ = Field(mesh, problem_.coefficients.size());
}

void ProblemWorker::draw_noise(std::uint64_t index, std::uint64_t step, std::size_t parameter) {
  if (sampler_) {
    sampler_->select_stream(index, step, parameter);
    sampler_->sample_grf_into(noise_);
    return;
  }
  CounterRng rng(StreamKey{problem_.seed, index, step, parameter});
  noise_.fill(rng.normal());
}

void ProblemWorker::pack_coefficients() {
  const std::size_t cells = coeffs_.cells();
  auto dst = coeffs_.data();
  for (std::size_t p = 0; p < ou_.size(); ++p) {
    const auto src = ou_[p].z.data();
    std::copy(src.begin(), src.end(), dst.begin() + static_cast<std::ptrdiff_t>(p * cells));
  }
}

const Field& ProblemWorker::solve(std::uint64_t index) {
  const double h = controller_.h();
  ou_.clear();
  for (const auto& params : problem_.coefficients) ou_.push_back(OUState::initial(params, h, problem_.integrator));
  if (!problem_.identity_pde) u_ = problem_.model.initial(problem_.mesh);

  for (std::size_t l = 0; l < controller_.intervals(); ++l) {
    if (solver_) {
      pack_coefficients();
      solver_->set_coefficients(coeffs_);
      solver_->advance_interval(u_, controller_.interval_start(l), controller_.interval_end(l), controller_.cfl_number(),
                                stats_);
    }
    for (std::size_t p = 0; p < ou_.size(); ++p) {
      draw_noise(index, l, p);
      advance(ou_[p], problem_.coefficients[p], noise_);
    }
  }
  pack_coefficients();
  return problem_.identity_pde ? coeffs_ : u_;
}

ProblemSolver::ProblemSolver(StochasticProblem problem) : problem_(std::move(problem)) { problem_.validate(); }

std::size_t ProblemSolver::components() const {
  return problem_.identity_pde ? problem_.coefficients.size() : problem_.model.law->components();
}

std::unique_ptr<SampleWorker> ProblemSolver::make_worker() const { return std::make_unique<ProblemWorker>(problem_); }

// ---------------------------------------------------------------------------

std::size_t default_thread_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

McResult run_mc(const SampleSolver& solver, std::size_t samples, std::uint64_t seed, const McOptions& options) {
  if (samples < 1) throw ArgumentError("Monte Carlo run needs at least one sample");
  const std::size_t block = std::max<std::size_t>(1, options.block_size);
  const std::size_t blocks = (samples + block - 1) / block;
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, blocks));
  const auto start = std::chrono::steady_clock::now();

  McResult result{MomentAccumulator(solver.mesh(), solver.components()), {}};
  std::mutex mutex;
  std::map<std::size_t, MomentAccumulator> pending;
  std::size_t next_merge = 0;
  std::atomic<std::size_t> next_block{0};
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> done{0};
  std::size_t last_percent = 0;
  std::optional<SampleFailure> failure;
  std::vector<std::uint64_t> skipped;
  CflStats cfl;

  auto work = [&]() {
    std::unique_ptr<SampleWorker> worker;
    try {
      worker = solver.make_worker();
    } catch (...) {
      stop = true;
      throw;
    }
    while (!stop) {
      const std::size_t b = next_block.fetch_add(1);
      if (b >= blocks) break;
      MomentAccumulator acc(solver.mesh(), solver.components());
      std::vector<std::uint64_t> local_skipped;
      const std::size_t first = b * block;
      const std::size_t last = std::min(samples, first + block);
      for (std::size_t s = first; s < last && !stop; ++s) {
        try {
          acc.add(worker->solve(s));
        } catch (const Error& e) {
          if (!options.skip_failed) {
            std::lock_guard<std::mutex> lock(mutex);
            if (!failure || failure->sample() > s) failure.emplace(s, seed, e.what());
            stop = true;
            break;
          }
          local_skipped.push_back(s);
        }
        const std::size_t finished = ++done;
        if (options.progress) {
          const std::size_t percent = finished * 100 / samples;
          std::lock_guard<std::mutex> lock(mutex);
          while (last_percent < percent) {
            ++last_percent;
            std::cerr << fmt::format("progress: {:3d}% ({}/{})\n", last_percent, finished, samples);
          }
        }
      }
      std::lock_guard<std::mutex> lock(mutex);
      skipped.insert(skipped.end(), local_skipped.begin(), local_skipped.end());
      pending.emplace(b, std::move(acc));
      // Blocks are folded strictly in index order so the result does not depend on scheduling.
      for (auto it = pending.find(next_merge); it != pending.end(); it = pending.find(next_merge)) {
        result.moments.merge(it->second);
        pending.erase(it);
        ++next_merge;
      }
    }
    std::lock_guard<std::mutex> lock(mutex);
    cfl.merge(worker->cfl_stats());
  };

  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        work();
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  try {
    work();
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (failure) throw *failure;

  std::sort(skipped.begin(), skipped.end());
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.stats.samples = samples - skipped.size();
  result.stats.skipped = skipped.size();
  result.stats.skipped_indices = std::move(skipped);
  result.stats.threads = threads;
  result.stats.wall_seconds = wall;
  result.stats.seconds_per_sample = wall * static_cast<double>(threads) / static_cast<double>(samples);
  result.stats.cfl = cfl;
  return result;
}

// ---------------------------------------------------------------------------

ErrorReport error_report(const Field& value, const Field& reference, Norm norm, std::size_t component) {
  if (!value.same_shape(reference)) throw ArgumentError("error_report: fields differ in shape");
  Field diff = value;
  diff.axpy(-1.0, reference);
  const auto measure = [&](const Field& f) { return norm == Norm::L1 ? l1_norm(f, component) : l2_norm(f, component); };
  ErrorReport r;
  r.absolute = measure(diff);
  const double ref = measure(reference);
  if (ref == 0.0) {
    r.relative_defined = r.absolute == 0.0;
    r.relative_percent = 0.0;
  } else {
    r.relative_percent = 100.0 * r.absolute / ref;
  }
  return r;
}

}  // namespace stochfv
