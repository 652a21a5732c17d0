#include "stochfv/moments.hpp"

#include <algorithm>
#include <cmath>

#include "stochfv/errors.hpp"

namespace stochfv {

MomentAccumulator::MomentAccumulator(MeshPtr mesh, std::size_t components)
    : mesh_(std::move(mesh)), components_(components) {
  if (!mesh_ || components_ == 0) throw ArgumentError("accumulator needs a mesh and at least one component");
  const std::size_t n = components_ * mesh_->cell_count();
  mean_.assign(n, 0.0);
  m2_.assign(n, 0.0);
  m3_.assign(n, 0.0);
  m4_.assign(n, 0.0);
}

void MomentAccumulator::require_shape(const MeshPtr& mesh, std::size_t components) const {
  if (!mesh_ || !mesh || components != components_ || !mesh->same_shape(*mesh_)) {
    throw ArgumentError("accumulator shape mismatch");
  }
}

void MomentAccumulator::add(const Field& sample) {
  require_shape(sample.mesh_ptr(), sample.components());
  ++count_;
  const double n = static_cast<double>(count_);
  const double n1 = n - 1.0;
  const auto x = sample.data();
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double delta = x[i] - mean_[i];
    const double dn = delta / n;
    const double dn2 = dn * dn;
    const double term1 = delta * dn * n1;
    mean_[i] += dn;
    m4_[i] += term1 * dn2 * (n * n - 3.0 * n + 3.0) + 6.0 * dn2 * m2_[i] - 4.0 * dn * m3_[i];
    m3_[i] += term1 * dn * (n - 2.0) - 3.0 * dn * m2_[i];
    m2_[i] += term1;
  }
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    if (mesh_) require_shape(other.mesh_, other.components_);
    *this = other;
    return;
  }
  require_shape(other.mesh_, other.components_);
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double d = other.mean_[i] - mean_[i];
    const double d2 = d * d;
    const double m2a = m2_[i], m2b = other.m2_[i];
    const double m3a = m3_[i], m3b = other.m3_[i];
    m4_[i] += other.m4_[i] + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
              6.0 * d2 * (na * na * m2b + nb * nb * m2a) / (n * n) + 4.0 * d * (na * m3b - nb * m3a) / n;
    m3_[i] += m3b + d2 * d * na * nb * (na - nb) / (n * n) + 3.0 * d * (na * m2b - nb * m2a) / n;
    m2_[i] += m2b + d2 * na * nb / n;
    mean_[i] += d * nb / n;
  }
  count_ += other.count_;
}

Field MomentAccumulator::mean() const {
  if (!mesh_) throw ArgumentError("empty accumulator has no shape");
  Field f(mesh_, components_);
  std::copy(mean_.begin(), mean_.end(), f.data().begin());
  return f;
}

Field MomentAccumulator::variance() const {
  if (!mesh_) throw ArgumentError("empty accumulator has no shape");
  Field f(mesh_, components_);
  if (count_ < 2) return f;
  const double denom = static_cast<double>(count_ - 1);
  auto out = f.data();
  for (std::size_t i = 0; i < m2_.size(); ++i) out[i] = std::max(0.0, m2_[i] / denom);
  return f;
}

Field MomentAccumulator::skewness() const {
  if (!mesh_) throw ArgumentError("empty accumulator has no shape");
  Field f(mesh_, components_);
  const double n = static_cast<double>(count_);
  auto out = f.data();
  for (std::size_t i = 0; i < m2_.size(); ++i) out[i] = m2_[i] > 0.0 ? std::sqrt(n) * m3_[i] / std::pow(m2_[i], 1.5) : 0.0;
  return f;
}

Field MomentAccumulator::excess_kurtosis() const {
  if (!mesh_) throw ArgumentError("empty accumulator has no shape");
  Field f(mesh_, components_);
  const double n = static_cast<double>(count_);
  auto out = f.data();
  for (std::size_t i = 0; i < m2_.size(); ++i) out[i] = m2_[i] > 0.0 ? n * m4_[i] / (m2_[i] * m2_[i]) - 3.0 : 0.0;
  return f;
}

MomentAccumulator merge(const MomentAccumulator& a, const MomentAccumulator& b) {
  MomentAccumulator out = a;
  out.merge(b);
  return out;
}

}  // namespace stochfv
