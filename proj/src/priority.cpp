#include "fdi/priority.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdi {

ConfidenceField::ConfidenceField(const InpaintMask& mask) {
  c_ = RealGrid::Zero(mask.rows(), mask.cols());
  for (Index r = 0; r < mask.rows(); ++r) {
    for (Index c = 0; c < mask.cols(); ++c) {
      c_(r, c) = mask.state(r, c) == PixelState::Known ? 1.0 : 0.0;
    }
  }
}

double patch_confidence(const ConfidenceField& conf, Pixel p, const PatchSpec& spec) {
  const int L = spec.half_width;
  double sum = 0.0;
  for (int a = -L; a <= L; ++a) {
    for (int b = -L; b <= L; ++b) {
      const Index r = p.row + a, c = p.col + b;
      if (r >= 0 && r < conf.rows() && c >= 0 && c < conf.cols()) sum += conf.at(r, c);
    }
  }
  return sum / spec.area();
}

double data_term(const IntGrid& img, const InpaintMask& mask, Pixel p) {
  double best = 0.0;
  // Opposite-neighbor axes through p: 0, 45, 90, 135 degrees.
  static constexpr int axes[4][2] = {{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}};
  for (const auto& t : axes) {
    const Index r1 = p.row + t[0], c1 = p.col + t[1];
    const Index r2 = p.row - t[0], c2 = p.col - t[1];
    if (mask.usable(r1, c1) && mask.usable(r2, c2)) {
      best = std::max(best, std::abs(img(r1, c1) - img(r2, c2)) / 2.0);
    }
  }
  // First differences between adjacent valued neighbors along the ring.
  static constexpr int ring[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1},
                                     {1, 1},   {1, 0},  {1, -1}, {0, -1}};
  for (int i = 0; i < 8; ++i) {
    const auto& n1 = ring[i];
    const auto& n2 = ring[(i + 1) % 8];
    const Index r1 = p.row + n1[0], c1 = p.col + n1[1];
    const Index r2 = p.row + n2[0], c2 = p.col + n2[1];
    if (mask.usable(r1, c1) && mask.usable(r2, c2)) {
      best = std::max(best, static_cast<double>(std::abs(img(r1, c1) - img(r2, c2))));
    }
  }
  return best;
}

double priority_star(double c_patch, double d_m, double e_t_best, int max_value,
                     bool invert_energy) {
  const double a_star = c_patch / max_value;
  const double b_star = c_patch;
  const double energy = invert_energy ? 1.0 - e_t_best / 2.0 : e_t_best;
  return (c_patch + a_star * d_m) * b_star * energy;
}

void propagate_confidence(ConfidenceField& conf, const InpaintMask& mask, Pixel p, double c_patch,
                          double e_t_norm) {
  if (e_t_norm < 0.0 || e_t_norm > 1.0) {
    throw std::invalid_argument("propagate_confidence: e_t_norm must be in [0, 1]");
  }
  const double committed = c_patch * (1.0 - e_t_norm);
  conf.set(p.row, p.col, committed);
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const Index r = p.row + dr, c = p.col + dc;
      if (!mask.in_bounds(r, c)) continue;
      if (mask.in_omega(r, c)) {
        conf.set(r, c, std::min(1.0, conf.at(r, c) + committed / 8.0));
      } else {
        conf.set(r, c, std::max(0.0, conf.at(r, c) * (1.0 - e_t_norm / 8.0)));
      }
    }
  }
}

}  // namespace fdi
