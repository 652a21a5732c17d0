#pragma once

#include <cstddef>
#include <vector>

#include "stochfv/grid.hpp"

namespace stochfv {

/// Streaming per-entry central moments (count, mean, M2, M3, M4) with pairwise merging.
class MomentAccumulator {
 public:
  MomentAccumulator() = default;
  MomentAccumulator(MeshPtr mesh, std::size_t components);

  const MeshPtr& mesh_ptr() const noexcept { return mesh_; }
  std::size_t components() const noexcept { return components_; }
  std::size_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  void add(const Field& sample);
  void merge(const MomentAccumulator& other);

  Field mean() const;
  /// Bessel-corrected sample variance; zero for fewer than two samples.
  Field variance() const;
  /// Sample skewness and excess kurtosis per entry (zero where the variance vanishes).
  Field skewness() const;
  Field excess_kurtosis() const;

  std::span<const double> raw_mean() const noexcept { return mean_; }
  std::span<const double> raw_m2() const noexcept { return m2_; }

 private:
  void require_shape(const MeshPtr& mesh, std::size_t components) const;

  MeshPtr mesh_;
  std::size_t components_ = 0;
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
  std::vector<double> m3_;
  std::vector<double> m4_;
};

MomentAccumulator merge(const MomentAccumulator& a, const MomentAccumulator& b);

}  // namespace stochfv
