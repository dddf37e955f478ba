#pragma once

#include "fdi/engine.hpp"
#include "fdi/image.hpp"

#include <string>
#include <vector>

namespace fdi {

/// Marks every pixel of the rectangle Missing.
void mark_rect_missing(InpaintMask& mask, const Rect& rect);

/// A bundled, fully deterministic synthetic experiment: scene image, the
/// region to fill, and the engine configuration the experiment uses.
struct Scenario {
  std::string name;
  RasterImage image;
  InpaintMask mask{1, 1};
  EngineConfig config;
};

std::vector<std::string> scenario_names();

/// Builds a bundled scenario by name; throws std::invalid_argument for
/// unknown names. "debonet161" aliases the quasi-periodic texture run.
Scenario make_scenario(const std::string& name);

}  // namespace fdi
