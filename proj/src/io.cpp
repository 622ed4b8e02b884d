#include "sobolev/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sobolev {

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) throw InvalidArgument("cannot open " + path.string() + " for writing");
  return f;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

PgmImage to_pgm(const GridFn& u, double lo, double hi) {
  const Domain& d = u.domain();
  if (d.dims() != 2) throw DomainMismatch("PGM output needs a 2D grid, got " + d.describe());
  const RVector v = u.real();
  if (lo == hi) {
    lo = v.minCoeff();
    hi = v.maxCoeff();
  }
  PgmImage img;
  img.width = d.nx();
  img.height = d.ny();
  img.pixels.assign(static_cast<size_t>(img.width) * img.height, 0);
  const double span = hi > lo ? hi - lo : 1.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const auto [ix, iy] = d.grid_index(i);
    const double t = std::clamp((v[i] - lo) / span, 0.0, 1.0);
    img.pixels[static_cast<size_t>(img.height - 1 - iy) * img.width + ix] = static_cast<int>(std::lround(t * img.maxval));
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const PgmImage& img, PgmFormat fmt) {
  if (img.maxval < 1 || img.maxval > 65535) throw InvalidArgument("PGM maxval must lie in [1, 65535]");
  if (img.pixels.size() != static_cast<size_t>(img.width) * img.height) throw InvalidArgument("PGM size mismatch");
  std::ofstream f = open_out(path, std::ios::out | std::ios::binary);
  f << (fmt == PgmFormat::Ascii ? "P2" : "P5") << '\n' << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  if (fmt == PgmFormat::Ascii) {
    for (int r = 0; r < img.height; ++r) {
      for (int c = 0; c < img.width; ++c) f << (c ? " " : "") << img.pixels[static_cast<size_t>(r) * img.width + c];
      f << '\n';
    }
    return;
  }
  const bool wide = img.maxval > 255;
  for (int p : img.pixels) {
    if (wide) f.put(static_cast<char>((p >> 8) & 0xff));  // big-endian
    f.put(static_cast<char>(p & 0xff));
  }
}

PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open " + path.string());
  std::string magic;
  PgmImage img;
  f >> magic >> img.width >> img.height >> img.maxval;
  if ((magic != "P2" && magic != "P5") || !f || img.width < 1 || img.height < 1)
    throw InvalidArgument("not a PGM file: " + path.string());
  img.pixels.resize(static_cast<size_t>(img.width) * img.height);
  if (magic == "P2") {
    for (int& p : img.pixels) f >> p;
  } else {
    f.get();  // single whitespace after the header
    const bool wide = img.maxval > 255;
    for (int& p : img.pixels) {
      const int hi = f.get();
      p = wide ? (hi << 8) | f.get() : hi;
    }
  }
  if (!f) throw InvalidArgument("truncated PGM file: " + path.string());
  return img;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows) {
  std::ofstream f = open_out(path);
  for (const std::string& c : comments) f << "# " << c << '\n';
  for (size_t i = 0; i < columns.size(); ++i) f << (i ? "," : "") << columns[i];
  f << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw InvalidArgument("CSV row width differs from the header");
    for (size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << format_double(row[i]);
    f << '\n';
  }
}

}  // namespace sobolev
