#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stochfv/grid.hpp"

namespace stochfv {

/// Raw dump: ASCII header line `stochfv-grid v1 <I> <J> <K> <components>` followed by the
/// payload as little-endian 64-bit floats in storage order.
void write_raw(const Field& f, std::ostream& os);
void write_raw(const Field& f, const std::filesystem::path& path);

struct RawGrid {
  Index3 extents{1, 1, 1};
  std::size_t components = 0;
  std::vector<double> data;
};

RawGrid read_raw(std::istream& is);
RawGrid read_raw(const std::filesystem::path& path);

/// CSV dump: header `x,y,z,c0,c1,...`, one row per cell center, 17 significant digits.
void write_csv(const Field& f, std::ostream& os);
void write_csv(const Field& f, const std::filesystem::path& path);

/// Shortest round-trip decimal form with at least 17 significant digits.
std::string format_real(double v);

}  // namespace stochfv
