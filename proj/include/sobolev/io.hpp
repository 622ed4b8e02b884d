#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sobolev/core.hpp"

namespace sobolev {

enum class PgmFormat { Ascii, Binary };  // P2, P5

struct PgmImage {
  int width = 0, height = 0;
  int maxval = 65535;
  std::vector<int> pixels;  // row-major, top row first
};

/// Real part of a 2D grid function scaled linearly from [lo, hi] to [0, maxval].
/// Masked pixels of a DiskMask are written as 0. lo == hi picks the data range.
/// Rows are flipped so that y increases upwards in the picture.
PgmImage to_pgm(const GridFn& u, double lo = 0.0, double hi = 0.0);

void write_pgm(const std::filesystem::path& path, const PgmImage& img, PgmFormat fmt = PgmFormat::Binary);
PgmImage read_pgm(const std::filesystem::path& path);

/// Comma-separated table; each header line is written as a '#' comment first.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows);

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

}  // namespace sobolev
