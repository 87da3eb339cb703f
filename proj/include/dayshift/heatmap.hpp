#pragma once

// Heatmap export of the shift matrix as portable pixmaps. The color variant
// interpolates green (similar) to red (shifted) by each cell's percentile rank
// among the off-diagonal distances; the grayscale variant maps the raw
// distance linearly. Neither format embeds timestamps, so exports are
// bit-reproducible.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dayshift/shiftmatrix.hpp"
#include "dayshift/util.hpp"

namespace dayshift {

namespace heatmap_detail {

inline constexpr std::array<int, 3> kSimilarColor = {0, 168, 0};
inline constexpr std::array<int, 3> kShiftedColor = {208, 16, 16};

// Percentile rank in [0, 1] per unordered day pair; ties ordered by value,
// then by (i, j).
inline std::vector<double> pair_percentiles(const ShiftMatrix& m) {
  struct Cell {
    double value;
    int i, j;
    std::size_t pair_index;
  };
  const int n = m.n_days;
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  std::size_t p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) cells.push_back({m.at(i, j), i, j, p++});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  std::vector<double> percentile(cells.size(), 0.5);
  if (cells.size() > 1) {
    for (std::size_t rank = 0; rank < cells.size(); ++rank) {
      percentile[cells[rank].pair_index] =
          static_cast<double>(rank) / static_cast<double>(cells.size() - 1);
    }
  }
  return percentile;
}

inline std::size_t pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  // Index into the upper triangle enumerated row by row.
  const auto ui = static_cast<std::size_t>(i);
  const auto un = static_cast<std::size_t>(n);
  return ui * un - ui * (ui + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

}  // namespace heatmap_detail

/// Binary PPM (P6); each matrix cell is a cell_px * cell_px block.
inline void write_heatmap_ppm(const ShiftMatrix& m, const std::filesystem::path& path, int cell_px = 6) {
  using namespace heatmap_detail;
  const int n = m.n_days;
  const std::vector<double> percentile = pair_percentiles(m);
  const int side = n * cell_px;

  std::string out = "P6\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(side) * static_cast<std::size_t>(side) * 3);
  for (int py = 0; py < side; ++py) {
    const int i = py / cell_px;
    for (int px = 0; px < side; ++px) {
      const int j = px / cell_px;
      const double t = i == j ? 0.0 : percentile[pair_index(i, j, n)];
      for (int c = 0; c < 3; ++c) {
        const double v = kSimilarColor[static_cast<std::size_t>(c)] +
                         t * (kShiftedColor[static_cast<std::size_t>(c)] - kSimilarColor[static_cast<std::size_t>(c)]);
        out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v))));
      }
    }
  }
  write_text_file(path, out);
}

/// Binary PGM (P5); gray level is the raw distance scaled to 0..255.
inline void write_heatmap_pgm(const ShiftMatrix& m, const std::filesystem::path& path, int cell_px = 6) {
  const int n = m.n_days;
  const int side = n * cell_px;
  std::string out = "P5\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
  for (int py = 0; py < side; ++py) {
    const int i = py / cell_px;
    for (int px = 0; px < side; ++px) {
      const int j = px / cell_px;
      const double v = std::clamp(m.at(i, j), 0.0, 1.0);
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
  }
  write_text_file(path, out);
}

}  // namespace dayshift
