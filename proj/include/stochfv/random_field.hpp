#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "stochfv/grid.hpp"
#include "stochfv/rng.hpp"

namespace stochfv {

/// Even, positive spectral density on the discrete Fourier lattice.
///
/// Lattice points are p = (i - I/2, j - J/2, k - K/2) (integer division) for
/// 0 <= i < I etc.; "centered" storage follows that indexing. The FFT works in natural
/// frequency order, which is the centered lattice rotated by I/2 along every axis
/// (natural index n holds the lattice point with index (n + I/2) mod I).
class SpectralDensity {
 public:
  enum class Kind { Rational, Exponential, Table };

  /// gamma(p) = (1 + |p|^q)^(-l)
  static SpectralDensity rational(double q, double l);
  /// gamma(p) = exp(-|p| / v)
  static SpectralDensity exponential(double correlation_length);
  /// Explicit values in centered lattice storage order.
  static SpectralDensity table(Index3 extents, std::vector<double> centered_values);
  /// Text table: first line `I J K`, then I*J*K whitespace-separated values in centered order.
  static SpectralDensity load_table(const std::filesystem::path& path);

  Kind kind() const noexcept { return kind_; }
  double q() const noexcept { return q_; }
  double l() const noexcept { return l_; }
  double correlation_length() const noexcept { return v_; }

  /// Density at a lattice point with Euclidean norm `norm_p` (analytic kinds only).
  double evaluate(double norm_p) const;

  /// Values on the centered lattice of `mesh`, in storage order.
  std::vector<double> centered_lattice(const StructuredMesh& mesh) const;
  /// Same values rotated into FFT natural frequency order.
  std::vector<double> natural_lattice(const StructuredMesh& mesh) const;

 private:
  Kind kind_ = Kind::Rational;
  double q_ = 2.0;
  double l_ = 4.0;
  double v_ = 1.0;
  Index3 table_extents_{0, 0, 0};
  std::vector<double> table_;
};

/// Maps a natural-order FFT index to the centered lattice index along an axis of extent n.
inline std::size_t natural_to_centered(std::size_t natural, std::size_t n) noexcept { return (natural + n / 2) % n; }

/// Samples mean-zero Gaussian random fields G = F^{-1}[ sqrt(gamma) F[Z] ] with Z white noise of
/// per-cell variance 1/|C|.
///
/// FFT convention: forward transform unnormalised, inverse carries 1/N. With that convention
/// Cov(G_x, G_y) = (1 / (N |C|)) sum_k gamma_k cos(2 pi k.(x - y) / N).
class GrfSampler {
 public:
  GrfSampler(MeshPtr mesh, const SpectralDensity& density, std::uint64_t seed);
  ~GrfSampler();
  GrfSampler(const GrfSampler& other);
  GrfSampler& operator=(const GrfSampler&) = delete;
  GrfSampler(GrfSampler&&) noexcept;
  GrfSampler& operator=(GrfSampler&&) = delete;

  const MeshPtr& mesh_ptr() const noexcept { return mesh_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Re-key the random stream; subsequent draws are a pure function of (seed, sample, step, parameter).
  void select_stream(std::uint64_t sample, std::uint64_t step, std::uint64_t parameter);

  /// i.i.d. N(0, 1/|C|) values, one per cell.
  Field white_noise();
  void white_noise_into(Field& out);

  /// Apply the spectral filter to a given noise field.
  Field filter(const Field& noise);
  void filter_into(const Field& noise, Field& out);

  Field sample_grf();
  void sample_grf_into(Field& out);

  /// max|imag| / max|real| of the last inverse transform (before the imaginary part was dropped).
  double last_imaginary_residue() const noexcept { return last_residue_; }

  std::span<const double> sqrt_gamma_natural() const noexcept { return *sqrt_gamma_; }
  const std::vector<double>& gamma_centered() const noexcept { return *gamma_centered_; }

 private:
  struct Plans;

  MeshPtr mesh_;
  std::uint64_t seed_;
  CounterRng rng_;
  std::shared_ptr<const std::vector<double>> sqrt_gamma_;
  std::shared_ptr<const std::vector<double>> gamma_centered_;
  std::unique_ptr<Plans> plans_;
  double last_residue_ = 0.0;
  Field scratch_noise_;
};

struct GaussianityStats {
  double mean = 0.0;
  double variance = 0.0;  // Bessel corrected
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  /// Zero sample variance; skewness and kurtosis are reported as 0.
  bool degenerate = false;
};

GaussianityStats gaussianity_stats(std::span<const Field> samples, std::size_t cell, std::size_t component = 0);
GaussianityStats gaussianity_stats(std::span<const double> values);

}  // namespace stochfv
