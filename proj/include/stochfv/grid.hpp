#pragma once

// Uniform axiparallel meshes and multi-component cell-average storage.
//
// Storage order (shared by Field, PaddedField and the raw dump format):
// component-major, then k, then j, with i fastest.

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace stochfv {

using Index3 = std::array<std::size_t, 3>;
using Point3 = std::array<double, 3>;

/// Boundary values at ghost-cell position `x` and time `t`, one entry per field component.
using DirichletFunction = std::function<void(const Point3& x, double t, std::span<double> values)>;

enum class BoundaryKind { Periodic, NeumannCopy, DirichletFunction };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Periodic;
  std::shared_ptr<const DirichletFunction> function;

  static BoundaryCondition periodic() { return {}; }
  static BoundaryCondition neumann_copy() { return {BoundaryKind::NeumannCopy, nullptr}; }
  static BoundaryCondition dirichlet(DirichletFunction fn);
};

/// Low and high side condition for one axis.
struct AxisBoundary {
  BoundaryCondition low;
  BoundaryCondition high;

  static AxisBoundary periodic() { return {}; }
  static AxisBoundary neumann_copy() {
    return {BoundaryCondition::neumann_copy(), BoundaryCondition::neumann_copy()};
  }
};

using BoundarySpec = std::array<AxisBoundary, 3>;

class StructuredMesh {
 public:
  /// `dimension` axes are active; the remaining axes collapse to extent 1 with spacing 1.
  StructuredMesh(int dimension, Index3 extents, Point3 spacing, Point3 origin,
                 BoundarySpec boundary = {});

  /// Mesh of `cells` per active axis covering [lower, upper] on every active axis.
  static std::shared_ptr<const StructuredMesh> uniform(int dimension, std::size_t cells, double lower,
                                                       double upper, BoundarySpec boundary = {});

  int dimension() const noexcept { return dimension_; }
  const Index3& extents() const noexcept { return extents_; }
  std::size_t extent(int axis) const { return extents_[static_cast<std::size_t>(axis)]; }
  const Point3& spacing() const noexcept { return spacing_; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  const Point3& origin() const noexcept { return origin_; }
  const BoundarySpec& boundary() const noexcept { return boundary_; }
  const AxisBoundary& boundary(int axis) const { return boundary_[static_cast<std::size_t>(axis)]; }

  std::size_t cell_count() const noexcept { return extents_[0] * extents_[1] * extents_[2]; }
  double cell_volume() const noexcept { return spacing_[0] * spacing_[1] * spacing_[2]; }
  double min_spacing() const;

  bool periodic(int axis) const;
  bool fully_periodic() const;

  /// Cell center; ghost indices (negative or beyond the extent) are allowed.
  Point3 cell_center(long i, long j = 0, long k = 0) const;
  Point3 cell_center_of(std::size_t linear) const;

  std::size_t linear_index(std::size_t i, std::size_t j = 0, std::size_t k = 0) const noexcept {
    return (k * extents_[1] + j) * extents_[0] + i;
  }

  /// Same extents, spacing and origin; boundary tags are not compared.
  bool same_shape(const StructuredMesh& other) const noexcept;

  /// Copy of this mesh with every active axis made periodic.
  std::shared_ptr<const StructuredMesh> periodic_twin() const;
  std::shared_ptr<const StructuredMesh> with_boundary(BoundarySpec boundary) const;

 private:
  int dimension_;
  Index3 extents_;
  Point3 spacing_;
  Point3 origin_;
  BoundarySpec boundary_;
};

using MeshPtr = std::shared_ptr<const StructuredMesh>;

class Field {
 public:
  Field() = default;
  Field(MeshPtr mesh, std::size_t components, double value = 0.0);

  const MeshPtr& mesh_ptr() const noexcept { return mesh_; }
  const StructuredMesh& mesh() const noexcept { return *mesh_; }
  std::size_t components() const noexcept { return components_; }
  std::size_t cells() const noexcept { return mesh_ ? mesh_->cell_count() : 0; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> component(std::size_t c);
  std::span<const double> component(std::size_t c) const;

  double& operator()(std::size_t c, std::size_t cell) noexcept { return data_[c * cells() + cell]; }
  double operator()(std::size_t c, std::size_t cell) const noexcept { return data_[c * cells() + cell]; }
  double& at(std::size_t c, std::size_t i, std::size_t j = 0, std::size_t k = 0) {
    return data_[c * cells() + mesh_->linear_index(i, j, k)];
  }
  double at(std::size_t c, std::size_t i, std::size_t j = 0, std::size_t k = 0) const {
    return data_[c * cells() + mesh_->linear_index(i, j, k)];
  }

  void fill(double value);
  bool same_shape(const Field& other) const noexcept;
  bool all_finite() const noexcept;

  /// this += factor * other
  void axpy(double factor, const Field& other);
  void scale(double factor);

  friend bool operator==(const Field& a, const Field& b);

 private:
  MeshPtr mesh_;
  std::size_t components_ = 0;
  std::vector<double> data_;
};

/// Field extended by ghost layers on every active axis.
class PaddedField {
 public:
  PaddedField() = default;
  PaddedField(MeshPtr mesh, std::size_t components, std::size_t ghost_width);

  const StructuredMesh& mesh() const noexcept { return *mesh_; }
  const MeshPtr& mesh_ptr() const noexcept { return mesh_; }
  std::size_t components() const noexcept { return components_; }
  std::size_t ghost_width() const noexcept { return ghost_; }
  const Index3& padded_extents() const noexcept { return padded_; }
  /// Ghost layers along `axis` (0 on inactive axes).
  std::size_t ghost(int axis) const noexcept { return offset_[static_cast<std::size_t>(axis)]; }
  /// Linear stride between neighbours along `axis` in padded storage.
  std::size_t stride(int axis) const noexcept { return stride_[static_cast<std::size_t>(axis)]; }
  std::size_t padded_cells() const noexcept { return padded_[0] * padded_[1] * padded_[2]; }

  std::size_t linear_index(long i, long j = 0, long k = 0) const noexcept {
    return ((static_cast<std::size_t>(k + static_cast<long>(offset_[2])) * padded_[1]) +
            static_cast<std::size_t>(j + static_cast<long>(offset_[1]))) * padded_[0] +
           static_cast<std::size_t>(i + static_cast<long>(offset_[0]));
  }
  double& operator()(std::size_t c, long i, long j = 0, long k = 0) noexcept {
    return data_[c * padded_cells() + linear_index(i, j, k)];
  }
  double operator()(std::size_t c, long i, long j = 0, long k = 0) const noexcept {
    return data_[c * padded_cells() + linear_index(i, j, k)];
  }
  const double* component_data(std::size_t c) const noexcept { return data_.data() + c * padded_cells(); }
  double* component_data(std::size_t c) noexcept { return data_.data() + c * padded_cells(); }

  /// Copy interior values back into a plain Field.
  Field interior() const;

 private:
  friend void fill_padded(const Field&, double, PaddedField&, bool);
  MeshPtr mesh_;
  std::size_t components_ = 0;
  std::size_t ghost_ = 0;
  Index3 padded_{1, 1, 1};
  Index3 offset_{0, 0, 0};
  Index3 stride_{1, 1, 1};
  std::vector<double> data_;
};

double l1_norm(const Field& f, std::size_t component);
double l2_norm(const Field& f, std::size_t component);

/// Fill ghost layers according to the mesh boundary tags.
PaddedField apply_boundary(const Field& f, std::size_t ghost_width, double t);

/// Reusing variant of apply_boundary. With `coefficient_mode`, non-periodic sides copy the
/// nearest interior cell regardless of their tag (coefficients carry no Dirichlet data).
void fill_padded(const Field& f, double t, PaddedField& out, bool coefficient_mode = false);

}  // namespace stochfv
