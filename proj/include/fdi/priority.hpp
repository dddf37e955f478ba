#pragma once

#include "fdi/image.hpp"

namespace fdi {

/// Per-pixel trustability in [0,1] over the whole image: 1 on original
/// data, 0 on the inpaint region, then reshaped by propagation after each
/// commit.
class ConfidenceField {
 public:
  explicit ConfidenceField(const InpaintMask& mask);

  double at(Index r, Index c) const { return c_(r, c); }
  void set(Index r, Index c, double v) { c_(r, c) = v; }
  Index rows() const { return c_.rows(); }
  Index cols() const { return c_.cols(); }
  const RealGrid& grid() const { return c_; }

 private:
  RealGrid c_;
};

/// Mean confidence over the full (2L+1)^2 support; cells outside the image
/// contribute 0 and the denominator is always the full support area.
double patch_confidence(const ConfidenceField& conf, Pixel p, const PatchSpec& spec);

/// Maximum first-order variation observable around an unknown pixel: over
/// the four axes through p, |I(p+t) - I(p-t)| / 2 where both opposite
/// neighbors have values, plus |I(n1) - I(n2)| for adjacent valued
/// neighbors along the 3x3 ring. 0 when nothing is computable.
double data_term(const IntGrid& img, const InpaintMask& mask, Pixel p);

struct PriorityRecord {
  Pixel px;
  double c_patch = 0.0;
  double d_m = 0.0;
  double e_t_best = 0.0;
  double p_star = 0.0;
};

/// P* = [C + (C/alpha) D_M] . C E_T with alpha = 2^W - 1; selection takes
/// the maximum. With invert_energy the E_T factor becomes (1 - e_t/2) for
/// sensitivity studies.
double priority_star(double c_patch, double d_m, double e_t_best, int max_value,
                     bool invert_energy = false);

/// Confidence update after committing p (linearity + unit Markov radius):
///   c(p) <- c_patch (1 - e_t_norm)
///   8-neighbors in the inpaint region: c <- min(1, c + c(p)/8)
///   8-neighbors in original data:      c <- max(0, c (1 - e_t_norm/8))
void propagate_confidence(ConfidenceField& conf, const InpaintMask& mask, Pixel p, double c_patch,
                          double e_t_norm);

}  // namespace fdi
