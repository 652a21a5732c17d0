#include "stochfv/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stochfv/errors.hpp"
#include "stochfv/grid_io.hpp"
#include "stochfv/oracle.hpp"
#include "stochfv/problem.hpp"

namespace stochfv {

namespace {

bool wants(const SimConfig& config, const std::string& format) {
  std::stringstream ss(config.formats);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find(format) != std::string::npos) return true;
  }
  return false;
}

std::filesystem::path prepare_dir(const SimConfig& config) {
  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

void write_field(const SimConfig& config, const Field& f, const std::filesystem::path& dir, const std::string& stem) {
  if (wants(config, "csv")) write_csv(f, dir / (stem + ".csv"));
  if (wants(config, "raw")) write_raw(f, dir / (stem + ".raw"));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os << text;
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

void report_warnings(const BuiltProblem& built, const RunOptions& options) {
  if (options.quiet) return;
  for (const auto& w : built.warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

std::size_t resolve_threads(const SimConfig& config, const RunOptions& options) {
  if (options.threads) return std::max<std::size_t>(1, *options.threads);
  if (config.threads != "auto") return static_cast<std::size_t>(std::stoull(config.threads));
  if (const char* env = std::getenv("STOCHFV_THREADS")) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
    throw ConfigError(fmt::format("STOCHFV_THREADS must be a positive integer, got '{}'", env));
  }
  return default_thread_count();
}

SimConfig effective_config(const SimConfig& config, const RunOptions& options) {
  SimConfig c = config;
  if (options.seed) c.seed = *options.seed;
  if (options.out) c.output_dir = options.out->string();
  return c;
}

RunSummary run_config(const SimConfig& config, const RunOptions& options, std::optional<std::size_t> resolution) {
  const SimConfig c = effective_config(config, options);
  const BuiltProblem built = build_problem(c, resolution);
  report_warnings(built, options);
  const ProblemSolver solver(built.problem);
  const double dx = built.problem.mesh->min_spacing();
  RunSummary s;
  s.samples = plan_samples(c.samples, dx, c.order);
  if (s.samples < 2) throw ConfigError("the sample rule gives fewer than two samples");
  const TimeController tc(c.t_end, built.h_rule, c.cfl);
  s.h = tc.h();
  s.intervals = tc.intervals();
  s.lambda_hat = built.lambda_hat;
  McOptions mo;
  mo.threads = resolve_threads(c, options);
  mo.skip_failed = c.skip_failed;
  mo.progress = c.progress && !options.quiet;
  s.result = run_mc(solver, s.samples, c.seed, mo);
  return s;
}

RunSummary cmd_run(const SimConfig& config, const RunOptions& options) {
  const SimConfig c = effective_config(config, options);
  RunSummary s = run_config(c, options);
  const auto dir = prepare_dir(c);
  write_field(c, s.result.mean(), dir, "mean");
  write_field(c, s.result.variance(), dir, "variance");

  const RunStats& st = s.result.stats;
  std::string text;
  text += "# stochfv run summary\n";
  text += fmt::format("# samples: {}\n", st.samples);
  text += fmt::format("# skipped samples: {}\n", st.skipped);
  for (auto idx : st.skipped_indices) text += fmt::format("#   skipped index {}\n", idx);
  text += fmt::format("# seed: {}\n", c.seed);
  text += fmt::format("# threads: {}\n", st.threads);
  text += fmt::format("# wall time [s]: {:.6f}\n", st.wall_seconds);
  text += fmt::format("# time per sample [s]: {:.6g}\n", st.seconds_per_sample);
  text += fmt::format("# sde interval h: {}\n", format_real(s.h));
  text += fmt::format("# sde intervals: {}\n", s.intervals);
  text += fmt::format("# expected wave speed bound: {}\n", format_real(s.lambda_hat));
  text += fmt::format("# fv steps: {}\n", st.cfl.steps);
  text += fmt::format("# max cfl sum: {}\n", format_real(st.cfl.max_cfl));
  text += fmt::format("# min dt: {}\n", format_real(st.cfl.min_dt));
  text += fmt::format("# cfl violations: {}\n", st.cfl.violations);
  text += "# resolved configuration follows\n";
  text += echo_config(c);
  write_text(dir / "summary.txt", text);
  return s;
}

SampleOutput cmd_sample(const SimConfig& config, std::uint64_t index, const RunOptions& options) {
  const SimConfig c = effective_config(config, options);
  const BuiltProblem built = build_problem(c);
  report_warnings(built, options);
  ProblemWorker worker(built.problem);
  SampleOutput out{worker.solve(index), worker.coefficients()};
  const auto dir = prepare_dir(c);
  write_field(c, out.solution, dir, fmt::format("sample_{}_solution", index));
  write_field(c, out.coefficients, dir, fmt::format("sample_{}_coefficients", index));
  return out;
}

std::vector<ConvergenceRow> cmd_converge(const SimConfig& config, const RunOptions& options) {
  const SimConfig c = effective_config(config, options);
  const auto& res = c.converge_resolutions;
  const bool finest = c.converge_reference == "finest";
  if (res.empty() || (finest && res.size() < 2)) {
    throw ArgumentError("convergence against the finest run needs at least two resolutions");
  }
  if (!finest && c.model != "scalar_ou") throw ConfigError("the oracle reference exists only for the scalar model");

  struct Level {
    std::size_t n;
    MeshPtr mesh;
    std::size_t samples;
    Field mean;
    Field variance;
  };
  std::vector<Level> levels;
  for (std::size_t n : res) {
    if (!options.quiet) std::cerr << fmt::format("converge: resolution {}\n", n);
    RunSummary s = run_config(c, options, n);
    levels.push_back({n, s.result.moments.mesh_ptr(), s.samples, s.result.mean(), s.result.variance()});
  }

  std::vector<ConvergenceRow> rows;
  const std::size_t evaluated = finest ? levels.size() - 1 : levels.size();
  std::vector<Field> ref_mean, ref_var;
  for (std::size_t l = 0; l < evaluated; ++l) {
    if (finest) {
      ref_mean.push_back(restrict_average(levels.back().mean, levels[l].mesh));
      ref_var.push_back(restrict_average(levels.back().variance, levels[l].mesh));
    } else {
      const ScalarOuParams sp = scalar_ou_params(c);
      const InitialProfile prof = scalar_profile(c);
      ref_mean.push_back(exact_mean(levels[l].mesh, sp, c.t_end, prof));
      ref_var.push_back(exact_second_moment(levels[l].mesh, sp, c.t_end, prof, c.seed));
    }
  }
  const std::size_t comps = levels.front().mean.components();
  for (const char* moment : {"mean", "variance"}) {
    const bool is_mean = std::string(moment) == "mean";
    for (std::size_t comp = 0; comp < comps; ++comp) {
      std::optional<double> prev;
      for (std::size_t l = 0; l < evaluated; ++l) {
        const Field& value = is_mean ? levels[l].mean : levels[l].variance;
        const Field& ref = is_mean ? ref_mean[l] : ref_var[l];
        const ErrorReport er = error_report(value, ref, Norm::L2, comp);
        ConvergenceRow row;
        row.resolution = levels[l].n;
        row.dx = levels[l].mesh->min_spacing();
        row.samples = levels[l].samples;
        row.moment = moment;
        row.component = comp;
        row.abs_error = er.absolute;
        row.rel_error_percent = er.relative_defined ? er.relative_percent : std::nan("");
        if (prev && l > 0 && er.absolute > 0.0 && *prev > 0.0) {
          row.rate = std::log2(*prev / er.absolute) /
                     std::log2(static_cast<double>(levels[l].n) / static_cast<double>(levels[l - 1].n));
        }
        prev = er.absolute;
        rows.push_back(row);
      }
    }
  }

  const auto dir = prepare_dir(c);
  std::ofstream os(dir / "convergence.csv");
  if (!os) throw IoError("cannot write convergence table");
  write_convergence_csv(rows, os);
  return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os) {
  os << "resolution,dx,samples,moment,component,abs_error,rel_error_percent,rate\n";
  for (const auto& r : rows) {
    fmt::print(os, "{},{},{},{},{},{},{},{}\n", r.resolution, format_real(r.dx), r.samples, r.moment, r.component,
               format_real(r.abs_error), format_real(r.rel_error_percent), r.rate ? format_real(*r.rate) : "");
  }
}

void cmd_oracle(const SimConfig& config, const RunOptions& options, std::ostream& os) {
  const SimConfig c = effective_config(config, options);
  if (c.model != "scalar_ou") throw ConfigError("the oracle exists only for the scalar model");
  const MeshPtr mesh = build_mesh(c);
  const ScalarOuParams sp = scalar_ou_params(c);
  const InitialProfile prof = scalar_profile(c);
  const Field mean = exact_mean(mesh, sp, c.t_end, prof);
  const Field var = exact_second_moment(mesh, sp, c.t_end, prof, c.seed);
  os << "x,mean,variance\n";
  for (std::size_t n = 0; n < mean.cells(); ++n) {
    fmt::print(os, "{},{},{}\n", format_real(mesh->cell_center_of(n)[0]), format_real(mean(0, n)),
               format_real(var(0, n)));
  }
}

}  // namespace stochfv
