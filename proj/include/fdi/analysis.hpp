#pragma once

#include "fdi/image.hpp"

#include <span>
#include <string>
#include <vector>

namespace fdi {

/// One (support side, energy variant) measurement: the number of training
/// candidates tied at the minimum energy for a probe pixel, and the
/// derived trustability 1 - (ties-1)/(|T_S|-1).
struct EquivalenceRow {
  int side = 3;
  std::string variant;  // "ec", "ec+s1", "ec+s2"
  long ties = 0;
  double trustability = 0.0;
  long tset_size = 0;
  double min_e_t = 0.0;
};

extern const std::vector<std::string> kEquivalenceVariants;

/// Treats the probe as the sole missing pixel, builds the full training
/// set per side, and counts exact-minimum ties for each variant. Sides
/// must be odd and fit the image; variants name the energy to use.
std::vector<EquivalenceRow> equivalence_scan(const IntGrid& img, Pixel probe,
                                             std::span<const int> sides,
                                             std::span<const std::string> variants);

std::string equivalence_csv(const std::vector<EquivalenceRow>& rows);

/// One placement of the missing pixel inside a 3x3 window (ids 1..9 in
/// raster order) together with every board position whose window matches
/// the known cells exactly.
struct ChessboardConfig {
  int id = 1;            // 1..9
  Pixel missing_cell;    // (0..2, 0..2) within the window
  Pixel window_origin;   // top-left of the target window on the board
  std::vector<Pixel> candidate_origins;
  std::vector<int> fill_values;  // one per candidate, in the same order
};

/// Enumerates the nine window placements covering `missing` and matches
/// each against the whole board (candidate windows must avoid the missing
/// pixel).
std::vector<ChessboardConfig> chessboard_configs(const IntGrid& board, Pixel missing);

std::string chessboard_csv(const std::vector<ChessboardConfig>& configs);

}  // namespace fdi
