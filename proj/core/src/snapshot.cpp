#include "sburgers/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace sburgers {

static_assert(std::endian::native == std::endian::little,
              "SBF1 writer assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'S', 'B', 'F', '1'};
constexpr std::size_t kHeaderSize = 4 + 4 + 8 + 8 + 8;

}  // namespace

void write_snapshot(const Field& field, const std::string& path, double time) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path + "' for writing", 0);

  out.write(kMagic, 4);
  const std::uint8_t head[4] = {1, static_cast<std::uint8_t>(field.grid().dim()),
                                static_cast<std::uint8_t>(field.components()), 0};
  out.write(reinterpret_cast<const char*>(head), 4);
  const std::uint64_t n = static_cast<std::uint64_t>(field.grid().n());
  const double period = field.grid().period();
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&period), 8);
  out.write(reinterpret_cast<const char*>(&time), 8);
  for (int c = 0; c < field.components(); ++c) {
    auto phys = field.physical(c);
    out.write(reinterpret_cast<const char*>(phys.data()),
              static_cast<std::streamsize>(phys.size() * sizeof(double)));
  }
  if (!out) throw FormatError("short write to '" + path + "'", kHeaderSize);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'", 0);

  auto read_exact = [&](void* dst, std::size_t size, std::size_t offset) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in.gcount()) != size)
      throw FormatError("truncated snapshot", offset + static_cast<std::size_t>(in.gcount()));
  };

  char magic[4];
  read_exact(magic, 4, 0);
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("bad magic", 0);

  std::uint8_t head[4];
  read_exact(head, 4, 4);
  if (head[0] != 1) throw FormatError("unsupported version " + std::to_string(head[0]), 4);
  const int d = head[1];
  const int components = head[2];
  if (d < 1 || d > 3) throw FormatError("invalid dimension " + std::to_string(d), 5);
  if (components != 1 && components != d)
    throw FormatError("invalid component count " + std::to_string(components), 6);
  if (head[3] != 0) throw FormatError("nonzero reserved byte", 7);

  std::uint64_t n = 0;
  double period = 0.0, time = 0.0;
  read_exact(&n, 8, 8);
  read_exact(&period, 8, 16);
  read_exact(&time, 8, 24);
  if (n < 4 || n % 2 != 0 || n > (1u << 20))
    throw FormatError("invalid grid size " + std::to_string(n), 8);
  if (!(period > 0.0)) throw FormatError("invalid period", 16);

  TorusGrid grid(d, static_cast<int>(n), period);
  Snapshot snap{Field(grid, components), time};
  std::size_t offset = kHeaderSize;
  for (int c = 0; c < components; ++c) {
    auto phys = snap.field.physical_mut(c);
    read_exact(phys.data(), phys.size() * sizeof(double), offset);
    offset += phys.size() * sizeof(double);
  }
  char extra;
  in.read(&extra, 1);
  if (in.gcount() != 0) throw FormatError("trailing bytes after payload", offset);
  return snap;
}

}  // namespace sburgers
