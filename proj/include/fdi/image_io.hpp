#pragma once

#include "fdi/image.hpp"

#include <stdexcept>
#include <string>

namespace fdi {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads an 8-bit PGM (P5) or an 8-bit gray / 24-bit RGB PNG, dispatching
/// on the file's magic bytes. Anything else raises IoError naming the
/// offending format or depth.
RasterImage load_image(const std::string& path);

/// Writes by extension: .pgm (single channel only) or .png.
void save_image(const RasterImage& img, const std::string& path);

RasterImage load_pgm(const std::string& path);
void save_pgm(const RasterImage& img, const std::string& path);
RasterImage load_png(const std::string& path);
void save_png(const RasterImage& img, const std::string& path);

/// Mask file rule: any nonzero sample (max over channels) marks the pixel
/// Missing.
InpaintMask load_mask(const std::string& path);

}  // namespace fdi
