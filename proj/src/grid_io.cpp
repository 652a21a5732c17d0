#include "stochfv/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "stochfv/errors.hpp"

namespace stochfv {

namespace {

constexpr const char* kRawMagic = "stochfv-grid";
constexpr const char* kRawVersion = "v1";

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
  }
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream os(path, mode);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

void write_raw(const Field& f, std::ostream& os) {
  const auto& e = f.mesh().extents();
  os << kRawMagic << ' ' << kRawVersion << ' ' << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << f.components()
     << '\n';
  for (double v : f.data()) {
    const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(v));
    char buf[8];
    std::memcpy(buf, &bits, 8);
    os.write(buf, 8);
  }
  if (!os) throw IoError("failed writing raw grid");
}

void write_raw(const Field& f, const std::filesystem::path& path) {
  auto os = open_out(path, std::ios::binary);
  write_raw(f, os);
}

RawGrid read_raw(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw IoError("raw grid: missing header");
  std::istringstream hs(header);
  std::string magic, version;
  RawGrid g;
  hs >> magic >> version >> g.extents[0] >> g.extents[1] >> g.extents[2] >> g.components;
  if (!hs || magic != kRawMagic || version != kRawVersion) throw IoError("raw grid: malformed header");
  const std::size_t n = g.extents[0] * g.extents[1] * g.extents[2] * g.components;
  g.data.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    char buf[8];
    if (!is.read(buf, 8)) throw IoError("raw grid: truncated payload");
    std::uint64_t bits;
    std::memcpy(&bits, buf, 8);
    g.data[i] = std::bit_cast<double>(to_little_endian(bits));
  }
  return g;
}

RawGrid read_raw(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  return read_raw(is);
}

void write_csv(const Field& f, std::ostream& os) {
  os << "x,y,z";
  for (std::size_t c = 0; c < f.components(); ++c) os << ",c" << c;
  os << '\n';
  const StructuredMesh& mesh = f.mesh();
  std::string line;
  for (std::size_t cell = 0; cell < f.cells(); ++cell) {
    const Point3 x = mesh.cell_center_of(cell);
    line = fmt::format("{:.17g},{:.17g},{:.17g}", x[0], x[1], x[2]);
    for (std::size_t c = 0; c < f.components(); ++c) {
      line += ',';
      line += format_real(f(c, cell));
    }
    line += '\n';
    os << line;
  }
  if (!os) throw IoError("failed writing csv grid");
}

void write_csv(const Field& f, const std::filesystem::path& path) {
  auto os = open_out(path, std::ios::out);
  write_csv(f, os);
}

}  // namespace stochfv
