#include "fdi/scenarios.hpp"

#include <stdexcept>

namespace fdi {

void mark_rect_missing(InpaintMask& mask, const Rect& rect) {
  for (int r = rect.row; r < rect.row + rect.height; ++r) {
    for (int c = rect.col; c < rect.col + rect.width; ++c) {
      mask.mark_missing(r, c);
    }
  }
}

std::vector<std::string> scenario_names() {
  return {"chessboard", "perfectcopy", "texture", "debonet161", "triangle", "line15", "kanizsa"};
}

Scenario make_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "chessboard") {
    s.image = RasterImage::gray(chessboard(50, 50, 5));
    s.mask = InpaintMask(50, 50);
    s.mask.mark_missing(24, 24);  // bottom-right corner pixel of a white cell
    return s;
  }
  if (name == "perfectcopy") {
    s.image = RasterImage::gray(tile_texture(64, 64, 16));
    s.mask = InpaintMask(64, 64);
    mark_rect_missing(s.mask, {26, 25, 12, 14});
    return s;
  }
  if (name == "texture" || name == "debonet161") {
    s.image = RasterImage::gray(weave_texture(64, 64));
    s.mask = InpaintMask(64, 64);
    mark_rect_missing(s.mask, {26, 25, 12, 14});
    return s;
  }
  if (name == "triangle") {
    s.image = RasterImage::gray(filled_triangle(48, 48));
    s.mask = InpaintMask(48, 48);
    mark_rect_missing(s.mask, {16, 13, 10, 10});  // straddles the left slanted edge
    return s;
  }
  if (name == "line15") {
    s.image = RasterImage::gray(line_image(41, 41, 1, 0.0));
    s.mask = InpaintMask(41, 41);
    mark_rect_missing(s.mask, {13, 13, 15, 15});  // the line crosses this block
    return s;
  }
  if (name == "kanizsa") {
    s.image = RasterImage::gray(kanizsa_triangle(64, 64));
    s.mask = InpaintMask(64, 64);
    mark_rect_missing(s.mask, {10, 26, 12, 12});  // over the top disc's wedge
    return s;
  }
  throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace fdi
