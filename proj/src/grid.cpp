#include "stochfv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stochfv/errors.hpp"

namespace stochfv {

BoundaryCondition BoundaryCondition::dirichlet(DirichletFunction fn) {
  return {BoundaryKind::DirichletFunction, std::make_shared<const DirichletFunction>(std::move(fn))};
}

StructuredMesh::StructuredMesh(int dimension, Index3 extents, Point3 spacing, Point3 origin,
                               BoundarySpec boundary)
    : dimension_(dimension), extents_(extents), spacing_(spacing), origin_(origin), boundary_(std::move(boundary)) {
  if (dimension < 1 || dimension > 3) {
    throw ArgumentError("mesh dimension must be 1, 2 or 3");
  }
  for (std::size_t a = 0; a < 3; ++a) {
    if (static_cast<int>(a) >= dimension) {
      extents_[a] = 1;
      spacing_[a] = 1.0;
      origin_[a] = 0.0;
      boundary_[a] = AxisBoundary::periodic();
      continue;
    }
    if (extents_[a] < 1) {
      throw ArgumentError("mesh extent along axis " + std::to_string(a) + " must be >= 1");
    }
    if (!(spacing_[a] > 0.0) || !std::isfinite(spacing_[a])) {
      throw ArgumentError("mesh spacing along axis " + std::to_string(a) + " must be positive");
    }
    const auto& ab = boundary_[a];
    const bool low_periodic = ab.low.kind == BoundaryKind::Periodic;
    const bool high_periodic = ab.high.kind == BoundaryKind::Periodic;
    if (low_periodic != high_periodic) {
      throw ConfigError("periodic boundary must be set on both sides of axis " + std::to_string(a));
    }
  }
}

std::shared_ptr<const StructuredMesh> StructuredMesh::uniform(int dimension, std::size_t cells, double lower,
                                                              double upper, BoundarySpec boundary) {
  if (cells < 1) throw ArgumentError("mesh needs at least one cell per axis");
  if (!(upper > lower)) throw ArgumentError("mesh domain must have positive length");
  const double dx = (upper - lower) / static_cast<double>(cells);
  return std::make_shared<const StructuredMesh>(dimension, Index3{cells, cells, cells}, Point3{dx, dx, dx},
                                                Point3{lower, lower, lower}, std::move(boundary));
}

double StructuredMesh::min_spacing() const {
  double m = spacing_[0];
  for (int a = 1; a < dimension_; ++a) m = std::min(m, spacing(a));
  return m;
}

bool StructuredMesh::periodic(int axis) const {
  return boundary(axis).low.kind == BoundaryKind::Periodic;
}

bool StructuredMesh::fully_periodic() const {
  for (int a = 0; a < dimension_; ++a) {
    if (!periodic(a)) return false;
  }
  return true;
}

Point3 StructuredMesh::cell_center(long i, long j, long k) const {
  const long idx[3] = {i, j, k};
  Point3 x{};
  for (std::size_t a = 0; a < 3; ++a) {
    x[a] = static_cast<int>(a) < dimension_ ? origin_[a] + (static_cast<double>(idx[a]) + 0.5) * spacing_[a] : 0.0;
  }
  return x;
}

Point3 StructuredMesh::cell_center_of(std::size_t linear) const {
  const std::size_t i = linear % extents_[0];
  const std::size_t j = (linear / extents_[0]) % extents_[1];
  const std::size_t k = linear / (extents_[0] * extents_[1]);
  return cell_center(static_cast<long>(i), static_cast<long>(j), static_cast<long>(k));
}

bool StructuredMesh::same_shape(const StructuredMesh& other) const noexcept {
  return dimension_ == other.dimension_ && extents_ == other.extents_ && spacing_ == other.spacing_ &&
         origin_ == other.origin_;
}

std::shared_ptr<const StructuredMesh> StructuredMesh::periodic_twin() const {
  return with_boundary(BoundarySpec{});
}

std::shared_ptr<const StructuredMesh> StructuredMesh::with_boundary(BoundarySpec boundary) const {
  return std::make_shared<const StructuredMesh>(dimension_, extents_, spacing_, origin_, std::move(boundary));
}

// ---------------------------------------------------------------------------

Field::Field(MeshPtr mesh, std::size_t components, double value)
    : mesh_(std::move(mesh)), components_(components) {
  if (!mesh_) throw ArgumentError("field needs a mesh");
  if (components_ < 1) throw ArgumentError("field needs at least one component");
  data_.assign(components_ * mesh_->cell_count(), value);
}

std::span<double> Field::component(std::size_t c) {
  if (c >= components_) throw ArgumentError("component index out of range");
  return std::span<double>(data_).subspan(c * cells(), cells());
}

std::span<const double> Field::component(std::size_t c) const {
  if (c >= components_) throw ArgumentError("component index out of range");
  return std::span<const double>(data_).subspan(c * cells(), cells());
}

void Field::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Field::same_shape(const Field& other) const noexcept {
  if (!mesh_ || !other.mesh_) return mesh_ == other.mesh_;
  return components_ == other.components_ && mesh_->same_shape(*other.mesh_);
}

bool Field::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void Field::axpy(double factor, const Field& other) {
  if (!same_shape(other)) throw ArgumentError("axpy on fields of different shape");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += factor * other.data_[n];
}

void Field::scale(double factor) {
  for (double& v : data_) v *= factor;
}

bool operator==(const Field& a, const Field& b) { return a.same_shape(b) && a.data_ == b.data_; }

// ---------------------------------------------------------------------------

PaddedField::PaddedField(MeshPtr mesh, std::size_t components, std::size_t ghost_width)
    : mesh_(std::move(mesh)), components_(components), ghost_(ghost_width) {
  if (!mesh_) throw ArgumentError("padded field needs a mesh");
  for (int a = 0; a < 3; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    offset_[ua] = a < mesh_->dimension() ? ghost_width : 0;
    padded_[ua] = mesh_->extent(a) + 2 * offset_[ua];
  }
  stride_ = {1, padded_[0], padded_[0] * padded_[1]};
  data_.assign(components_ * padded_cells(), 0.0);
}

Field PaddedField::interior() const {
  Field f(mesh_, components_);
  const auto& e = mesh_->extents();
  for (std::size_t c = 0; c < components_; ++c) {
    for (std::size_t k = 0; k < e[2]; ++k) {
      for (std::size_t j = 0; j < e[1]; ++j) {
        for (std::size_t i = 0; i < e[0]; ++i) {
          f.at(c, i, j, k) = (*this)(c, static_cast<long>(i), static_cast<long>(j), static_cast<long>(k));
        }
      }
    }
  }
  return f;
}

double l1_norm(const Field& f, std::size_t component) {
  if (component >= f.components()) throw ArgumentError("l1_norm: component out of range");
  double sum = 0.0;
  for (double v : f.component(component)) sum += std::abs(v);
  return f.mesh().cell_volume() * sum;
}

double l2_norm(const Field& f, std::size_t component) {
  if (component >= f.components()) throw ArgumentError("l2_norm: component out of range");
  double sum = 0.0;
  for (double v : f.component(component)) sum += v * v;
  return std::sqrt(f.mesh().cell_volume() * sum);
}

PaddedField apply_boundary(const Field& f, std::size_t ghost_width, double t) {
  if (ghost_width < 1) throw ArgumentError("ghost width must be >= 1");
  PaddedField out(f.mesh_ptr(), f.components(), ghost_width);
  fill_padded(f, t, out);
  return out;
}

void fill_padded(const Field& f, double t, PaddedField& out, bool coefficient_mode) {
  const StructuredMesh& mesh = f.mesh();
  if (out.mesh_ != f.mesh_ptr() || out.components_ != f.components()) {
    out = PaddedField(f.mesh_ptr(), f.components(), out.ghost_ == 0 ? 1 : out.ghost_);
  }
  const auto& e = mesh.extents();
  const std::size_t m = f.components();
  const std::size_t pc = out.padded_cells();

  for (std::size_t c = 0; c < m; ++c) {
    const double* src = f.component(c).data();
    double* dst = out.data_.data() + c * pc;
    for (std::size_t k = 0; k < e[2]; ++k) {
      for (std::size_t j = 0; j < e[1]; ++j) {
        const double* row = src + mesh.linear_index(0, j, k);
        double* prow = dst + out.linear_index(0, static_cast<long>(j), static_cast<long>(k));
        std::copy(row, row + e[0], prow);
      }
    }
  }

  std::vector<double> values(m);
  // Axes are processed in order and each pass sweeps the full padded range of the axes already
  // handled, so edge and corner ghosts are consistent.
  for (int axis = 0; axis < mesh.dimension(); ++axis) {
    const auto ua = static_cast<std::size_t>(axis);
    const long n = static_cast<long>(e[ua]);
    const long g = static_cast<long>(out.ghost(axis));
    long lo[3];
    long hi[3];
    for (int b = 0; b < 3; ++b) {
      const auto ub = static_cast<std::size_t>(b);
      const long gb = static_cast<long>(out.ghost(b));
      if (b < axis) {
        lo[b] = -gb;
        hi[b] = static_cast<long>(e[ub]) + gb;
      } else {
        lo[b] = 0;
        hi[b] = static_cast<long>(e[ub]);
      }
    }
    lo[axis] = 0;
    hi[axis] = 1;
    const AxisBoundary& ab = mesh.boundary(axis);
    for (int side = 0; side < 2; ++side) {
      const BoundaryCondition& bc = side == 0 ? ab.low : ab.high;
      BoundaryKind kind = bc.kind;
      if (coefficient_mode && kind == BoundaryKind::DirichletFunction) kind = BoundaryKind::NeumannCopy;
      if (kind == BoundaryKind::DirichletFunction && !bc.function) {
        throw ConfigError("Dirichlet boundary on axis " + std::to_string(axis) + " has no boundary function");
      }
      for (long k = lo[2]; k < hi[2]; ++k) {
        for (long j = lo[1]; j < hi[1]; ++j) {
          for (long i = lo[0]; i < hi[0]; ++i) {
            for (long layer = 1; layer <= g; ++layer) {
              long ghost_idx[3] = {i, j, k};
              long src_idx[3] = {i, j, k};
              ghost_idx[axis] = side == 0 ? -layer : n - 1 + layer;
              switch (kind) {
                case BoundaryKind::Periodic:
                  src_idx[axis] = ((ghost_idx[axis] % n) + n) % n;
                  break;
                case BoundaryKind::NeumannCopy:
                  src_idx[axis] = side == 0 ? 0 : n - 1;
                  break;
                case BoundaryKind::DirichletFunction:
                  break;
              }
              const std::size_t gl = out.linear_index(ghost_idx[0], ghost_idx[1], ghost_idx[2]);
              if (kind == BoundaryKind::DirichletFunction) {
                const Point3 x = mesh.cell_center(ghost_idx[0], ghost_idx[1], ghost_idx[2]);
                (*bc.function)(x, t, values);
                for (std::size_t c = 0; c < m; ++c) out.data_[c * pc + gl] = values[c];
              } else {
                const std::size_t sl = out.linear_index(src_idx[0], src_idx[1], src_idx[2]);
                for (std::size_t c = 0; c < m; ++c) out.data_[c * pc + gl] = out.data_[c * pc + sl];
              }
            }
          }
        }
      }
    }
  }
}

}  // namespace stochfv
