#include "fdi/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace fdi {

namespace {

int next_pnm_token(std::istream& in) {
  // Skips whitespace and '#' comments, returns the next integer.
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      while (in.get(ch) && ch != '\n') {
      }
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      in.unget();
      int v;
      if (!(in >> v)) break;
      return v;
    }
  }
  throw IoError("pgm: truncated header");
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

RasterImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || m1 != '5') throw IoError(path + ": unsupported format (expected PGM P5)");
  const int cols = next_pnm_token(in);
  const int rows = next_pnm_token(in);
  const int maxval = next_pnm_token(in);
  if (cols <= 0 || rows <= 0) throw IoError(path + ": invalid PGM dimensions");
  if (maxval > 255) throw IoError(path + ": unsupported bit depth (PGM maxval > 255)");
  if (maxval <= 0) throw IoError(path + ": invalid PGM maxval");
  in.get();  // single whitespace after maxval
  std::vector<unsigned char> buf(static_cast<std::size_t>(rows) * cols);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
    throw IoError(path + ": truncated PGM data");
  }
  IntGrid g(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      g(r, c) = buf[static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(c)];
    }
  }
  return RasterImage::gray(std::move(g));
}

void save_pgm(const RasterImage& img, const std::string& path) {
  if (img.channels() != 1) throw IoError("pgm supports single-channel images only");
  if (img.bit_depth != 8) throw IoError("pgm writer supports 8-bit images only");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  std::vector<unsigned char> buf(static_cast<std::size_t>(img.rows() * img.cols()));
  const IntGrid& g = img.plane(0);
  for (Index r = 0; r < img.rows(); ++r) {
    for (Index c = 0; c < img.cols(); ++c) {
      buf[static_cast<std::size_t>(r * img.cols() + c)] = static_cast<unsigned char>(g(r, c));
    }
  }
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failed: " + path);
}

RasterImage load_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png: allocation failure");
  }
  std::string error;
  std::vector<png_bytep> row_ptrs;
  std::vector<png_byte> data;
  int rows = 0, cols = 0, channels = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path + ": corrupt PNG stream");
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth == 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path + ": unsupported bit depth (16-bit PNG)");
  }
  if (color_type & PNG_COLOR_MASK_ALPHA) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path + ": unsupported format (PNG alpha channel)");
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);
  cols = static_cast<int>(png_get_image_width(png, info));
  rows = static_cast<int>(png_get_image_height(png, info));
  channels = png_get_channels(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path + ": unsupported format (PNG channel count)");
  }
  const std::size_t stride = png_get_rowbytes(png, info);
  data.resize(stride * static_cast<std::size_t>(rows));
  row_ptrs.resize(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) row_ptrs[static_cast<std::size_t>(r)] = data.data() + stride * r;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  RasterImage img;
  img.bit_depth = 8;
  for (int ch = 0; ch < channels; ++ch) {
    IntGrid g(rows, cols);
    for (int r = 0; r < rows; ++r) {
      const png_byte* row = data.data() + stride * r;
      for (int c = 0; c < cols; ++c) g(r, c) = row[c * channels + ch];
    }
    img.planes.push_back(std::move(g));
  }
  return img;
}

void save_png(const RasterImage& img, const std::string& path) {
  if (img.bit_depth != 8) throw IoError("png writer supports 8-bit images only");
  if (img.channels() != 1 && img.channels() != 3) {
    throw IoError("png writer supports 1 or 3 channels only");
  }
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot open " + path + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(path + ": PNG write failure");
  }
  png_init_io(png, fp.get());
  const int color_type = img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.cols()),
               static_cast<png_uint_32>(img.rows()), 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const int channels = img.channels();
  std::vector<png_byte> row(static_cast<std::size_t>(img.cols()) * channels);
  for (Index r = 0; r < img.rows(); ++r) {
    for (Index c = 0; c < img.cols(); ++c) {
      for (int ch = 0; ch < channels; ++ch) {
        row[static_cast<std::size_t>(c) * channels + ch] =
            static_cast<png_byte>(img.plane(ch)(r, c));
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

RasterImage load_image(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open " + path);
  unsigned char magic[8] = {0};
  probe.read(reinterpret_cast<char*>(magic), 8);
  probe.close();
  if (magic[0] == 'P' && magic[1] == '5') return load_pgm(path);
  if (magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N' && magic[3] == 'G') {
    return load_png(path);
  }
  throw IoError(path + ": unsupported format (expected PGM P5 or PNG)");
}

void save_image(const RasterImage& img, const std::string& path) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".pgm") {
    save_pgm(img, path);
  } else if (ext == ".png") {
    save_png(img, path);
  } else {
    throw IoError(path + ": unsupported output format (use .pgm or .png)");
  }
}

InpaintMask load_mask(const std::string& path) {
  const RasterImage img = load_image(path);
  IntGrid nonzero = img.plane(0);
  for (int c = 1; c < img.channels(); ++c) nonzero = nonzero.max(img.plane(c));
  return InpaintMask::from_nonzero(nonzero);
}

}  // namespace fdi
