#include "hbo/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "hbo/error.hpp"

namespace hbo {

static_assert(std::endian::native == std::endian::little, "HBOF writer assumes a little-endian host");

namespace {

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is, const std::string& path) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ValidationError("snapshot: truncated file " + path);
  return v;
}

void write_header(std::ofstream& os, const Grid& g) {
  os.write("HBOF", 4);
  put<std::uint32_t>(os, kSnapshotVersion);
  put<std::uint32_t>(os, g.dim());
  for (int a = 0; a < g.dim(); ++a) put<std::uint32_t>(os, g.samples());
  put<double>(os, g.half_length());
}

Grid read_header(std::ifstream& is, const std::string& path) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "HBOF", 4) != 0) throw ValidationError("snapshot: bad magic in " + path);
  if (get<std::uint32_t>(is, path) != kSnapshotVersion) throw ValidationError("snapshot: unsupported version in " + path);
  const auto d = get<std::uint32_t>(is, path);
  if (d < 1 || d > kMaxDim) throw ValidationError("snapshot: bad dimension in " + path);
  std::uint32_t M = 0;
  for (std::uint32_t a = 0; a < d; ++a) {
    const auto m = get<std::uint32_t>(is, path);
    if (a > 0 && m != M) throw ValidationError("snapshot: only cubic grids are supported: " + path);
    M = m;
  }
  const double L = get<double>(is, path);
  return Grid(static_cast<int>(d), L, static_cast<int>(M));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("snapshot: cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("snapshot: missing input file " + path);
  return is;
}

}  // namespace

void write_snapshot(const std::string& path, const RealField& f) {
  auto os = open_out(path);
  write_header(os, f.grid);
  os.write(reinterpret_cast<const char*>(f.values.data()), f.values.size() * sizeof(double));
}

RealField read_snapshot(const std::string& path) {
  auto is = open_in(path);
  Grid g = read_header(is, path);
  RealField f(g);
  is.read(reinterpret_cast<char*>(f.values.data()), f.values.size() * sizeof(double));
  if (!is) throw ValidationError("snapshot: truncated file " + path);
  if (is.peek() != std::char_traits<char>::eof()) throw ValidationError("snapshot: trailing data in " + path);
  return f;
}

void write_spectrum(const std::string& path, const SpectralField& F, SpectrumKind kind) {
  auto os = open_out(path);
  write_header(os, F.grid);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(kind));
  os.write(reinterpret_cast<const char*>(F.coeffs.data()), F.coeffs.size() * sizeof(cplx));
}

SpectralField read_spectrum(const std::string& path, SpectrumKind* kind) {
  auto is = open_in(path);
  Grid g = read_header(is, path);
  const auto k = get<std::uint8_t>(is, path);
  if (k != static_cast<std::uint8_t>(SpectrumKind::fourier)) throw ValidationError("snapshot: unknown spectrum kind in " + path);
  if (kind) *kind = static_cast<SpectrumKind>(k);
  SpectralField F(g);
  is.read(reinterpret_cast<char*>(F.coeffs.data()), F.coeffs.size() * sizeof(cplx));
  if (!is) throw ValidationError("snapshot: truncated file " + path);
  if (is.peek() != std::char_traits<char>::eof()) throw ValidationError("snapshot: trailing data in " + path);
  return F;
}

}  // namespace hbo
