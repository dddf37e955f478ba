#include "fdi/image.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace fdi {

RasterImage RasterImage::gray(IntGrid plane, int bit_depth) {
  RasterImage img;
  img.bit_depth = bit_depth;
  img.planes.push_back(std::move(plane));
  return img;
}

RasterImage RasterImage::rgb(IntGrid r, IntGrid g, IntGrid b, int bit_depth) {
  if (r.rows() != g.rows() || r.rows() != b.rows() || r.cols() != g.cols() ||
      r.cols() != b.cols()) {
    throw std::invalid_argument("rgb planes must share dimensions");
  }
  RasterImage img;
  img.bit_depth = bit_depth;
  img.planes.push_back(std::move(r));
  img.planes.push_back(std::move(g));
  img.planes.push_back(std::move(b));
  return img;
}

bool operator==(const RasterImage& a, const RasterImage& b) {
  if (a.bit_depth != b.bit_depth || a.channels() != b.channels()) return false;
  for (int c = 0; c < a.channels(); ++c) {
    if (a.plane(c).rows() != b.plane(c).rows() || a.plane(c).cols() != b.plane(c).cols())
      return false;
    if (!(a.plane(c) == b.plane(c)).all()) return false;
  }
  return true;
}

std::vector<RasterImage> split_channels(const RasterImage& img) {
  std::vector<RasterImage> out;
  out.reserve(static_cast<std::size_t>(img.channels()));
  for (int c = 0; c < img.channels(); ++c) {
    out.push_back(RasterImage::gray(img.plane(c), img.bit_depth));
  }
  return out;
}

RasterImage merge_channels(const std::vector<RasterImage>& planes) {
  if (planes.empty()) throw std::invalid_argument("merge_channels: no planes");
  if (planes.size() != 1 && planes.size() != 3) {
    throw std::invalid_argument("merge_channels: expected 1 or 3 planes");
  }
  RasterImage out;
  out.bit_depth = planes.front().bit_depth;
  for (const RasterImage& p : planes) {
    if (p.channels() != 1) throw std::invalid_argument("merge_channels: plane not single-channel");
    if (p.rows() != planes.front().rows() || p.cols() != planes.front().cols()) {
      throw std::invalid_argument("merge_channels: plane dimensions differ");
    }
    if (p.bit_depth != out.bit_depth) {
      throw std::invalid_argument("merge_channels: plane bit depths differ");
    }
    out.planes.push_back(p.plane(0));
  }
  return out;
}

IntGrid luma(const RasterImage& img) {
  if (img.channels() == 1) return img.plane(0);
  IntGrid y(img.rows(), img.cols());
  for (Index r = 0; r < img.rows(); ++r) {
    for (Index c = 0; c < img.cols(); ++c) {
      const double v = 0.299 * img.plane(0)(r, c) + 0.587 * img.plane(1)(r, c) +
                       0.114 * img.plane(2)(r, c);
      y(r, c) = static_cast<std::int32_t>(std::lround(v));
    }
  }
  return y;
}

InpaintMask::InpaintMask(Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("mask dimensions must be positive");
  state_ = ByteGrid::Constant(rows, cols, static_cast<std::uint8_t>(PixelState::Known));
}

InpaintMask InpaintMask::from_nonzero(const IntGrid& plane) {
  InpaintMask mask(plane.rows(), plane.cols());
  for (Index r = 0; r < plane.rows(); ++r) {
    for (Index c = 0; c < plane.cols(); ++c) {
      if (plane(r, c) != 0) mask.mark_missing(r, c);
    }
  }
  return mask;
}

void InpaintMask::mark_missing(Index r, Index c) {
  if (!in_bounds(r, c)) throw std::out_of_range("mark_missing: out of bounds");
  if (state_(r, c) != static_cast<std::uint8_t>(PixelState::Known)) {
    throw std::logic_error("mark_missing: pixel already in the inpaint region");
  }
  state_(r, c) = static_cast<std::uint8_t>(PixelState::Missing);
  ++missing_;
}

void InpaintMask::fill(Pixel p) {
  if (!in_bounds(p.row, p.col) ||
      state_(p.row, p.col) != static_cast<std::uint8_t>(PixelState::Missing)) {
    throw std::logic_error("fill: pixel is not Missing");
  }
  state_(p.row, p.col) = static_cast<std::uint8_t>(PixelState::Filled);
  --missing_;
  ++filled_;
}

std::vector<Pixel> boundary(const InpaintMask& mask) {
  std::vector<Pixel> out;
  for (Index r = 0; r < mask.rows(); ++r) {
    for (Index c = 0; c < mask.cols(); ++c) {
      if (!mask.missing(r, c)) continue;
      bool has_usable = false;
      for (int dr = -1; dr <= 1 && !has_usable; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          if (mask.usable(r + dr, c + dc)) {
            has_usable = true;
            break;
          }
        }
      }
      if (has_usable) out.push_back({static_cast<int>(r), static_cast<int>(c)});
    }
  }
  return out;
}

PatchSpec::PatchSpec(int half_width_in) : half_width(half_width_in) {
  if (half_width < 1) throw std::invalid_argument("patch half-width must be >= 1");
}

PatchSpec PatchSpec::from_side(int side) {
  if (side < 3 || side % 2 == 0) throw std::invalid_argument("patch side must be odd and >= 3");
  return PatchSpec(side / 2);
}

namespace {

template <typename Admit>
TrainingSet build_training_set(const InpaintMask& mask, const PatchSpec& spec,
                               TrainingSet::Provenance prov, const Admit& admit) {
  const int L = spec.half_width;
  TrainingSet ts;
  ts.provenance = prov;
  for (Index r = L; r < mask.rows() - L; ++r) {
    for (Index c = L; c < mask.cols() - L; ++c) {
      bool ok = true;
      for (int a = -L; a <= L && ok; ++a) {
        for (int b = -L; b <= L; ++b) {
          if (!mask.known(r + a, c + b) || !admit(r + a, c + b)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) ts.centers.push_back({static_cast<int>(r), static_cast<int>(c)});
    }
  }
  return ts;
}

}  // namespace

TrainingSet training_set_full(const InpaintMask& mask, const PatchSpec& spec) {
  return build_training_set(mask, spec, TrainingSet::Provenance::FullImage,
                            [](Index, Index) { return true; });
}

TrainingSet training_set_rects(const InpaintMask& mask, const PatchSpec& spec,
                               std::span<const Rect> rects) {
  if (rects.empty()) throw std::invalid_argument("training_set_rects: no rectangles");
  return build_training_set(
      mask, spec, TrainingSet::Provenance::Rectangles, [&](Index r, Index c) {
        const Pixel p{static_cast<int>(r), static_cast<int>(c)};
        for (const Rect& rect : rects) {
          if (rect.contains(p)) return true;
        }
        return false;
      });
}

TrainingSet training_set_mask(const InpaintMask& mask, const PatchSpec& spec,
                              const IntGrid& allow_nonzero) {
  if (allow_nonzero.rows() != mask.rows() || allow_nonzero.cols() != mask.cols()) {
    throw std::invalid_argument("training_set_mask: dimensions differ from image");
  }
  return build_training_set(mask, spec, TrainingSet::Provenance::MaskFile,
                            [&](Index r, Index c) { return allow_nonzero(r, c) != 0; });
}

IntGrid solid(Index rows, Index cols, int value) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("image dimensions must be positive");
  return IntGrid::Constant(rows, cols, value);
}

IntGrid chessboard(Index rows, Index cols, int cell, int max_value) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("image dimensions must be positive");
  if (cell <= 0 || rows % cell != 0 || cols % cell != 0) {
    throw std::invalid_argument("chessboard cell must divide both dimensions");
  }
  IntGrid g(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      g(r, c) = ((r / cell + c / cell) % 2 == 0) ? max_value : 0;
    }
  }
  return g;
}

IntGrid line_image(Index rows, Index cols, int thickness, double angle_deg, int fg, int bg) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("image dimensions must be positive");
  if (thickness < 1) throw std::invalid_argument("line thickness must be >= 1");
  IntGrid g = IntGrid::Constant(rows, cols, bg);
  // Straight line through the image center at the given angle (0 deg is
  // horizontal); thickness measured perpendicular to the line.
  const double theta = angle_deg * M_PI / 180.0;
  const double nr = std::cos(theta);   // normal components: n = (cos, -sin)
  const double nc = -std::sin(theta);  // so the 0 deg normal is vertical
  const double cr = (rows - 1) / 2.0;
  const double cc = (cols - 1) / 2.0;
  const double half = thickness / 2.0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const double dist = std::abs((r - cr) * nr + (c - cc) * nc);
      if (dist < half + 1e-9) g(r, c) = fg;
    }
  }
  return g;
}

IntGrid filled_triangle(Index rows, Index cols, int fg, int bg) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("image dimensions must be positive");
  IntGrid g = IntGrid::Constant(rows, cols, bg);
  // Isoceles triangle, apex at the top center, base at 80% height.
  const double apex_r = 0.15 * rows;
  const double base_r = 0.85 * rows;
  const double half_base = 0.35 * cols;
  const double mid_c = (cols - 1) / 2.0;
  for (Index r = 0; r < rows; ++r) {
    if (r < apex_r || r > base_r) continue;
    const double t = (r - apex_r) / (base_r - apex_r);
    const double half_w = t * half_base;
    for (Index c = 0; c < cols; ++c) {
      if (std::abs(c - mid_c) <= half_w) g(r, c) = fg;
    }
  }
  return g;
}

IntGrid kanizsa_triangle(Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("image dimensions must be positive");
  IntGrid g = IntGrid::Constant(rows, cols, 255);
  // Three black discs at the corners of an upright triangle, then the white
  // occluding triangle drawn over them leaves the classic wedge cuts.
  const double radius = 0.12 * std::min(rows, cols);
  const double v0r = 0.22 * rows, v0c = 0.50 * cols;
  const double v1r = 0.75 * rows, v1c = 0.25 * cols;
  const double v2r = 0.75 * rows, v2c = 0.75 * cols;
  auto disc = [&](double cr, double cc) {
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) {
        const double dr = r - cr, dc = c - cc;
        if (dr * dr + dc * dc <= radius * radius) g(r, c) = 0;
      }
    }
  };
  disc(v0r, v0c);
  disc(v1r, v1c);
  disc(v2r, v2c);
  auto edge = [](double ar, double ac, double br, double bc, double pr, double pc) {
    return (br - ar) * (pc - ac) - (bc - ac) * (pr - ar);
  };
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const double e0 = edge(v0r, v0c, v1r, v1c, r, c);
      const double e1 = edge(v1r, v1c, v2r, v2c, r, c);
      const double e2 = edge(v2r, v2c, v0r, v0c, r, c);
      if ((e0 >= 0 && e1 >= 0 && e2 >= 0) || (e0 <= 0 && e1 <= 0 && e2 <= 0)) g(r, c) = 255;
    }
  }
  return g;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

namespace {

// Clockwise walk index of (rm, cm) along its square ring at Chebyshev
// distance d from the tile center, starting at the ring's top-left cell.
int ring_walk_index(int rm, int cm, int mid) {
  const int dr = rm - mid, dc = cm - mid;
  const int d = std::max(std::abs(dr), std::abs(dc));
  if (dr == -d) return dc + d;                // top row, left to right
  if (dc == d) return 2 * d + (dr + d);       // right column, downward
  if (dr == d) return 4 * d + (d - dc);       // bottom row, right to left
  return 6 * d + (d - dr);                    // left column, upward
}

}  // namespace

IntGrid weave_texture(Index rows, Index cols, int period) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("image dimensions must be positive");
  if (period < 5 || period % 2 == 0) {
    throw std::invalid_argument("weave period must be odd and >= 5");
  }
  // Checkerboard of period x period knots. Each knot is a dark dot inside a
  // uniform inner ring, wrapped in a clockwise-graded sheath; the two knot
  // types share the inner ring exactly but differ in dot and sheath values,
  // so 3x3 content alone cannot tell the dots apart while first
  // differences (which reach the sheath) can.
  IntGrid g(rows, cols);
  const int mid = period / 2;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const bool alt = ((r / period) + (c / period)) % 2 != 0;
      const int rm = static_cast<int>(r % period);
      const int cm = static_cast<int>(c % period);
      const int d = std::max(std::abs(rm - mid), std::abs(cm - mid));
      int v;
      if (d == 0) {
        v = alt ? 130 : 30;
      } else if (d == 1) {
        v = 80;
      } else {
        const int base = alt ? 152 : 150;
        v = base + (5 * ring_walk_index(rm, cm, mid)) % 76;
      }
      g(r, c) = v;
    }
  }
  return g;
}

IntGrid burl_texture(Index rows, Index cols, int period) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("image dimensions must be positive");
  if (period < 4) throw std::invalid_argument("burl period must be >= 4");
  // Smooth interlocking ridges quantized to three plateaus: wide flat
  // regions with knotted edges, the hard case for small-window matching.
  IntGrid g(rows, cols);
  const double p = period;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const double u = 2.0 * M_PI * (r % period) / p;
      const double v = 2.0 * M_PI * (c % period) / p;
      const double ridge_h = std::pow(0.5 + 0.5 * std::cos(v + 0.6 * std::sin(u)), 3.0);
      const double ridge_v = std::pow(0.5 + 0.5 * std::cos(u + 0.6 * std::sin(v)), 3.0);
      const double x = 35.0 + 200.0 * std::max(ridge_h, ridge_v) + 12.0 * std::sin(u + v);
      const int q = static_cast<int>(std::lround(std::clamp(x, 0.0, 255.0)));
      g(r, c) = q < 90 ? 40 : q < 180 ? 150 : 235;
    }
  }
  return g;
}

IntGrid tile_texture(Index rows, Index cols, int period, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("image dimensions must be positive");
  if (period < 2) throw std::invalid_argument("tile period must be >= 2");
  IntGrid g(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const std::uint64_t cell =
          static_cast<std::uint64_t>(r % period) * static_cast<std::uint64_t>(period) +
          static_cast<std::uint64_t>(c % period);
      g(r, c) = static_cast<std::int32_t>(splitmix64(seed ^ cell) & 0xff);
    }
  }
  return g;
}

RasterImage synthesize(const SynthesisRequest& req) {
  if (req.kind == "solid") return RasterImage::gray(solid(req.rows, req.cols, req.value));
  if (req.kind == "chessboard")
    return RasterImage::gray(chessboard(req.rows, req.cols, req.cell));
  if (req.kind == "line")
    return RasterImage::gray(line_image(req.rows, req.cols, req.thickness, req.angle_deg));
  if (req.kind == "triangle") return RasterImage::gray(filled_triangle(req.rows, req.cols));
  if (req.kind == "kanizsa") return RasterImage::gray(kanizsa_triangle(req.rows, req.cols));
  if (req.kind == "weave") {
    return RasterImage::gray(weave_texture(req.rows, req.cols, req.period ? req.period : 5));
  }
  if (req.kind == "burl") {
    return RasterImage::gray(burl_texture(req.rows, req.cols, req.period ? req.period : 16));
  }
  if (req.kind == "tiles") {
    return RasterImage::gray(tile_texture(req.rows, req.cols, req.period ? req.period : 16));
  }
  throw std::invalid_argument("unknown synthetic kind: " + req.kind);
}

}  // namespace fdi
