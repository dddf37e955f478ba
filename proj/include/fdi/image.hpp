#pragma once

#include "fdi/grid.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fdi {

/// W-bit intensity image; 1 (gray) or 3 (RGB) planes of identical size.
/// Samples always satisfy 0 <= s <= 2^W - 1.
struct RasterImage {
  int bit_depth = 8;
  std::vector<IntGrid> planes;

  Index rows() const { return planes.empty() ? 0 : planes.front().rows(); }
  Index cols() const { return planes.empty() ? 0 : planes.front().cols(); }
  int channels() const { return static_cast<int>(planes.size()); }
  int max_value() const { return (1 << bit_depth) - 1; }

  const IntGrid& plane(int c = 0) const { return planes.at(static_cast<std::size_t>(c)); }
  IntGrid& plane(int c = 0) { return planes.at(static_cast<std::size_t>(c)); }

  static RasterImage gray(IntGrid plane, int bit_depth = 8);
  static RasterImage rgb(IntGrid r, IntGrid g, IntGrid b, int bit_depth = 8);
};

bool operator==(const RasterImage& a, const RasterImage& b);

/// One image per channel; merge_channels is the exact inverse.
std::vector<RasterImage> split_channels(const RasterImage& img);
RasterImage merge_channels(const std::vector<RasterImage>& planes);

/// Rec. 601 luma, rounded to nearest.
IntGrid luma(const RasterImage& img);

enum class PixelState : std::uint8_t { Known = 0, Missing = 1, Filled = 2 };

/// Per-pixel fill state. Missing and Filled together form the inpaint
/// region; a pixel transitions Missing -> Filled exactly once per scan and
/// never reverts. Single-writer: the engine owns mutation, everything else
/// reads.
class InpaintMask {
 public:
  InpaintMask(Index rows, Index cols);  // all Known

  /// Nonzero sample => Missing.
  static InpaintMask from_nonzero(const IntGrid& plane);

  Index rows() const { return state_.rows(); }
  Index cols() const { return state_.cols(); }

  PixelState state(Index r, Index c) const { return static_cast<PixelState>(state_(r, c)); }
  bool in_bounds(Index r, Index c) const {
    return r >= 0 && r < state_.rows() && c >= 0 && c < state_.cols();
  }
  /// In-bounds and not Missing: a value exists (original or committed).
  bool usable(Index r, Index c) const {
    return in_bounds(r, c) && state_(r, c) != static_cast<std::uint8_t>(PixelState::Missing);
  }
  /// In-bounds and original data (never part of the inpaint region).
  bool known(Index r, Index c) const {
    return in_bounds(r, c) && state_(r, c) == static_cast<std::uint8_t>(PixelState::Known);
  }
  bool missing(Index r, Index c) const {
    return in_bounds(r, c) && state_(r, c) == static_cast<std::uint8_t>(PixelState::Missing);
  }
  bool in_omega(Index r, Index c) const {
    return in_bounds(r, c) && state_(r, c) != static_cast<std::uint8_t>(PixelState::Known);
  }

  void mark_missing(Index r, Index c);  // Known -> Missing (setup only)
  void fill(Pixel p);                   // Missing -> Filled

  std::ptrdiff_t missing_count() const { return missing_; }
  std::ptrdiff_t filled_count() const { return filled_; }
  std::ptrdiff_t omega_count() const { return missing_ + filled_; }

 private:
  ByteGrid state_;
  std::ptrdiff_t missing_ = 0;
  std::ptrdiff_t filled_ = 0;
};

/// Missing pixels with at least one usable 8-neighbor, in raster order.
/// Always derived from the current state, never cached.
std::vector<Pixel> boundary(const InpaintMask& mask);

/// Square neighborhood geometry of side 2L+1. The center offset (0,0) is
/// excluded from all pairwise sums.
struct PatchSpec {
  int half_width = 1;

  explicit PatchSpec(int half_width_in);
  static PatchSpec from_side(int side);  // side must be odd, >= 3

  int side() const { return 2 * half_width + 1; }
  int area() const { return side() * side(); }
};

/// Candidate patch centers whose full (2L+1)^2 window lies in original
/// Known data (and inside the image), so the pairwise content sum is well
/// defined for every offset.
struct TrainingSet {
  enum class Provenance { FullImage, Rectangles, MaskFile };

  Provenance provenance = Provenance::FullImage;
  std::vector<Pixel> centers;  // raster order

  bool empty() const { return centers.empty(); }
  std::size_t size() const { return centers.size(); }
};

TrainingSet training_set_full(const InpaintMask& mask, const PatchSpec& spec);
TrainingSet training_set_rects(const InpaintMask& mask, const PatchSpec& spec,
                               std::span<const Rect> rects);
TrainingSet training_set_mask(const InpaintMask& mask, const PatchSpec& spec,
                              const IntGrid& allow_nonzero);

// Deterministic synthetic scenes.
IntGrid solid(Index rows, Index cols, int value);
IntGrid chessboard(Index rows, Index cols, int cell, int max_value = 255);
IntGrid line_image(Index rows, Index cols, int thickness, double angle_deg, int fg = 0,
                   int bg = 255);
IntGrid filled_triangle(Index rows, Index cols, int fg = 0, int bg = 255);
IntGrid kanizsa_triangle(Index rows, Index cols);
IntGrid weave_texture(Index rows, Index cols, int period = 5);
IntGrid burl_texture(Index rows, Index cols, int period = 16);
IntGrid tile_texture(Index rows, Index cols, int period = 16,
                     std::uint64_t seed = 0x9e3779b97f4a7c15ull);

/// Name-keyed synthesis used by the CLI; throws std::invalid_argument for
/// unknown kinds.
struct SynthesisRequest {
  std::string kind;  // solid|chessboard|line|triangle|kanizsa|weave|burl|tiles
  Index rows = 0;
  Index cols = 0;
  int cell = 5;
  int value = 0;
  int thickness = 1;
  double angle_deg = 0.0;
  int period = 0;  // 0: the kind's default
};
RasterImage synthesize(const SynthesisRequest& req);

}  // namespace fdi
