#include "stochfv/random_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <string>

#include "stochfv/errors.hpp"

namespace stochfv {

namespace {

// Plan creation and destruction in FFTW are not thread safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr double kResidueTolerance = 1e-10;

double lattice_norm(const Index3& idx, const Index3& ext, int dimension) {
  double s = 0.0;
  for (int a = 0; a < dimension; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const double p = static_cast<double>(idx[ua]) - static_cast<double>(ext[ua] / 2);
    s += p * p;
  }
  return std::sqrt(s);
}

}  // namespace

SpectralDensity SpectralDensity::rational(double q, double l) {
  if (!(q >= 1.0) || !(l >= 1.0)) throw ArgumentError("rational density needs q >= 1 and l >= 1");
  SpectralDensity d;
  d.kind_ = Kind::Rational;
  d.q_ = q;
  d.l_ = l;
  return d;
}

SpectralDensity SpectralDensity::exponential(double correlation_length) {
  if (!(correlation_length > 0.0)) throw ArgumentError("exponential density needs a positive correlation length");
  SpectralDensity d;
  d.kind_ = Kind::Exponential;
  d.v_ = correlation_length;
  return d;
}

SpectralDensity SpectralDensity::table(Index3 extents, std::vector<double> centered_values) {
  if (centered_values.size() != extents[0] * extents[1] * extents[2]) {
    throw ArgumentError("density table size does not match its extents");
  }
  for (double v : centered_values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("density table values must be positive and finite");
  }
  // Evenness gamma(p) = gamma(-p) under the periodic lattice.
  const auto mirror = [](std::size_t i, std::size_t n) { return n % 2 == 0 ? (n - i) % n : n - 1 - i; };
  for (std::size_t k = 0; k < extents[2]; ++k) {
    for (std::size_t j = 0; j < extents[1]; ++j) {
      for (std::size_t i = 0; i < extents[0]; ++i) {
        const std::size_t a = (k * extents[1] + j) * extents[0] + i;
        const std::size_t b =
            (mirror(k, extents[2]) * extents[1] + mirror(j, extents[1])) * extents[0] + mirror(i, extents[0]);
        if (centered_values[a] != centered_values[b]) throw ArgumentError("density table is not even under p -> -p");
      }
    }
  }
  SpectralDensity d;
  d.kind_ = Kind::Table;
  d.table_extents_ = extents;
  d.table_ = std::move(centered_values);
  return d;
}

SpectralDensity SpectralDensity::load_table(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open density table '" + path.string() + "'");
  Index3 ext{};
  if (!(is >> ext[0] >> ext[1] >> ext[2])) throw IoError("density table: malformed extents line");
  std::vector<double> values(ext[0] * ext[1] * ext[2]);
  for (double& v : values) {
    if (!(is >> v)) throw IoError("density table: expected " + std::to_string(values.size()) + " values");
  }
  return table(ext, std::move(values));
}

double SpectralDensity::evaluate(double norm_p) const {
  switch (kind_) {
    case Kind::Rational:
      return std::pow(1.0 + std::pow(norm_p, q_), -l_);
    case Kind::Exponential:
      return std::exp(-norm_p / v_);
    case Kind::Table:
      break;
  }
  throw ArgumentError("tabulated density has no analytic form");
}

std::vector<double> SpectralDensity::centered_lattice(const StructuredMesh& mesh) const {
  const auto& ext = mesh.extents();
  if (kind_ == Kind::Table) {
    if (table_extents_ != ext) throw ConfigError("density table extents do not match the mesh");
    return table_;
  }
  std::vector<double> out(mesh.cell_count());
  for (std::size_t k = 0; k < ext[2]; ++k) {
    for (std::size_t j = 0; j < ext[1]; ++j) {
      for (std::size_t i = 0; i < ext[0]; ++i) {
        out[mesh.linear_index(i, j, k)] = evaluate(lattice_norm({i, j, k}, ext, mesh.dimension()));
      }
    }
  }
  return out;
}

std::vector<double> SpectralDensity::natural_lattice(const StructuredMesh& mesh) const {
  const std::vector<double> centered = centered_lattice(mesh);
  const auto& ext = mesh.extents();
  std::vector<double> out(centered.size());
  for (std::size_t k = 0; k < ext[2]; ++k) {
    const std::size_t ck = natural_to_centered(k, ext[2]);
    for (std::size_t j = 0; j < ext[1]; ++j) {
      const std::size_t cj = natural_to_centered(j, ext[1]);
      for (std::size_t i = 0; i < ext[0]; ++i) {
        out[mesh.linear_index(i, j, k)] = centered[mesh.linear_index(natural_to_centered(i, ext[0]), cj, ck)];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct GrfSampler::Plans {
  std::size_t n = 0;
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(const StructuredMesh& mesh) : n(mesh.cell_count()) {
    int dims[3];
    const int rank = mesh.dimension();
    for (int a = 0; a < rank; ++a) dims[a] = static_cast<int>(mesh.extent(rank - 1 - a));
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    buffer = fftw_alloc_complex(n);
    if (buffer == nullptr) throw Error("fftw allocation failed");
    forward = fftw_plan_dft(rank, dims, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft(rank, dims, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (forward == nullptr || backward == nullptr) throw Error("fftw planning failed");
  }

  ~Plans() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buffer) fftw_free(buffer);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

GrfSampler::GrfSampler(MeshPtr mesh, const SpectralDensity& density, std::uint64_t seed)
    : mesh_(std::move(mesh)), seed_(seed), rng_(StreamKey{seed, 0, 0, 0}) {
  if (!mesh_) throw ArgumentError("GRF sampler needs a mesh");
  if (!mesh_->fully_periodic()) {
    throw UnsupportedConfiguration("Gaussian random fields are only synthesised on periodic meshes");
  }
  auto centered = std::make_shared<std::vector<double>>(density.centered_lattice(*mesh_));
  auto root = std::make_shared<std::vector<double>>(density.natural_lattice(*mesh_));
  for (double& g : *root) {
    g = std::sqrt(g);
    if (!(g > 0.0) || !std::isfinite(g)) throw ArgumentError("spectral density must be positive and finite");
  }
  gamma_centered_ = std::move(centered);
  sqrt_gamma_ = std::move(root);
  plans_ = std::make_unique<Plans>(*mesh_);
}

GrfSampler::~GrfSampler() = default;

GrfSampler::GrfSampler(const GrfSampler& other)
    : mesh_(other.mesh_),
      seed_(other.seed_),
      rng_(other.rng_),
      sqrt_gamma_(other.sqrt_gamma_),
      gamma_centered_(other.gamma_centered_),
      plans_(std::make_unique<Plans>(*other.mesh_)),
      last_residue_(other.last_residue_) {}

GrfSampler::GrfSampler(GrfSampler&&) noexcept = default;

void GrfSampler::select_stream(std::uint64_t sample, std::uint64_t step, std::uint64_t parameter) {
  rng_ = CounterRng(StreamKey{seed_, sample, step, parameter});
}

Field GrfSampler::white_noise() {
  Field out(mesh_, 1);
  white_noise_into(out);
  return out;
}

void GrfSampler::white_noise_into(Field& out) {
  if (!out.mesh_ptr() || !out.mesh().same_shape(*mesh_) || out.components() != 1) out = Field(mesh_, 1);
  const double scale = 1.0 / std::sqrt(mesh_->cell_volume());
  for (double& v : out.data()) v = scale * rng_.normal();
}

Field GrfSampler::filter(const Field& noise) {
  Field out(mesh_, 1);
  filter_into(noise, out);
  return out;
}

void GrfSampler::filter_into(const Field& noise, Field& out) {
  if (!noise.mesh().same_shape(*mesh_) || noise.components() != 1) {
    throw ArgumentError("noise field does not match the sampler mesh");
  }
  if (!out.mesh_ptr() || !out.mesh().same_shape(*mesh_) || out.components() != 1) out = Field(mesh_, 1);
  const std::size_t n = plans_->n;
  fftw_complex* buf = plans_->buffer;
  const auto in = noise.data();
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = in[i];
    buf[i][1] = 0.0;
  }
  fftw_execute(plans_->forward);
  const auto& root = *sqrt_gamma_;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = root[i] * inv_n;
    buf[i][0] *= s;
    buf[i][1] *= s;
  }
  fftw_execute(plans_->backward);
  double max_re = 0.0;
  double max_im = 0.0;
  auto o = out.data();
  for (std::size_t i = 0; i < n; ++i) {
    o[i] = buf[i][0];
    max_re = std::max(max_re, std::abs(buf[i][0]));
    max_im = std::max(max_im, std::abs(buf[i][1]));
  }
  last_residue_ = max_re > 0.0 ? max_im / max_re : max_im;
  if (!(last_residue_ < kResidueTolerance)) {
    throw Error("inverse transform left an imaginary residue of " + std::to_string(last_residue_) +
                " relative to the field magnitude");
  }
}

Field GrfSampler::sample_grf() {
  Field out(mesh_, 1);
  sample_grf_into(out);
  return out;
}

void GrfSampler::sample_grf_into(Field& out) {
  white_noise_into(scratch_noise_);
  filter_into(scratch_noise_, out);
}

// ---------------------------------------------------------------------------

GaussianityStats gaussianity_stats(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw ArgumentError("gaussianity_stats needs at least two samples");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  GaussianityStats s;
  s.mean = mean;
  s.variance = m2 / static_cast<double>(n - 1);
  if (m2 == 0.0) {
    s.degenerate = true;
    return s;
  }
  const double dn = static_cast<double>(n);
  s.skewness = std::sqrt(dn) * m3 / std::pow(m2, 1.5);
  s.excess_kurtosis = dn * m4 / (m2 * m2) - 3.0;
  return s;
}

GaussianityStats gaussianity_stats(std::span<const Field> samples, std::size_t cell, std::size_t component) {
  if (samples.size() < 2) throw ArgumentError("gaussianity_stats needs at least two samples");
  std::vector<double> values;
  values.reserve(samples.size());
  for (const Field& f : samples) {
    if (component >= f.components() || cell >= f.cells()) throw ArgumentError("gaussianity_stats: index out of range");
    values.push_back(f(component, cell));
  }
  return gaussianity_stats(values);
}

}  // namespace stochfv
