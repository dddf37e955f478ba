#pragma once

#include "fdi/grid.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace fdi {

/// Integer offset from a patch point to a ring point; doubles as a
/// direction for finite differences.
struct Offset {
  int dr = 0;
  int dc = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

/// All 8k orientations of order k: the offsets from a center to the square
/// ring at Chebyshev radius k, enumerated counter-clockwise from (0, k).
/// For k = 1 this is the 8 compass directions at 45-degree steps.
struct DirectionSet {
  int order = 1;
  std::vector<Offset> directions;

  static DirectionSet ring(int k);
  std::size_t size() const { return directions.size(); }
};

/// Normalization constants attached to order k.
struct DiffNormalization {
  int order;
  long r_k;       // 8k(8k - 1); R_1 = 56
  double beta_k;  // 2^-k
  long range;     // 2^k (2^W - 1)

  static DiffNormalization order_k(int k, int max_value);
};

long binomial(int n, int j);

/// A fractional sample point expressed as lattice pixels with bilinear
/// weights; weights at each sample sum to 1 and at most two are nonzero
/// for ring directions (one coordinate is always integral).
struct WeightedSample {
  Pixel px;
  double weight = 1.0;
};

/// The k+1 points stepping from p to p + theta at equal parameter
/// increments j/k, each as its weighted lattice support.
std::vector<std::vector<WeightedSample>> line_samples(Pixel p, Offset theta, int k);

/// True when theta's samples all land on the lattice (axis or exact
/// diagonal directions), so integer arithmetic applies end to end.
bool on_lattice(Offset theta, int k);

/// Order-k forward difference of img along theta at p:
///   sum_j (-1)^(k-j) C(k,j) I(p + (j/k) theta),
/// the closed form of k-fold composition of order-1 differences along the
/// unit step toward theta. Absent when any pixel with nonzero weight in
/// any sample fails the validity predicate (out of image, Missing, or an
/// excluded center) -- absence is a value, not an error.
template <typename Validity>
std::optional<double> delta(const IntGrid& img, const Validity& valid, Pixel p, Offset theta,
                            int k);

/// Order-k difference via the telescoped pointwise-difference expansion
///   Delta^(k) = [I(p + k u) - I(p)] - sum_{j<k} C(k,j) Delta^(j),
/// with Pascal's-triangle coefficients; u is a unit lattice step. Agrees
/// with delta() exactly in integer arithmetic.
template <typename Validity>
std::optional<long> expand_binomial(const IntGrid& img, const Validity& valid, Pixel p,
                                    Offset unit_step, int k);

/// Self-test hook: I(r,i) + sum_t Delta^(1) I(r,i+t) == I(r,i+k), exactly.
/// Throws std::out_of_range when samples i..i+k leave the row.
bool telescope_check(const IntGrid& img, Index row, Index i, int k);

/// Validity predicate accepting every in-bounds pixel.
struct AllValid {
  const IntGrid* img;
  bool operator()(Index r, Index c) const { return in_bounds(*img, r, c); }
};

// --- implementation ---

template <typename Validity>
std::optional<double> delta(const IntGrid& img, const Validity& valid, Pixel p, Offset theta,
                            int k) {
  if (k < 1) return std::nullopt;
  if (on_lattice(theta, k)) {
    const Offset unit{theta.dr / k, theta.dc / k};
    double acc = 0.0;
    int sign = (k % 2 == 0) ? 1 : -1;
    for (int j = 0; j <= k; ++j) {
      const Index r = p.row + static_cast<Index>(j) * unit.dr;
      const Index c = p.col + static_cast<Index>(j) * unit.dc;
      if (!valid(r, c)) return std::nullopt;
      acc += sign * static_cast<double>(binomial(k, j)) * img(r, c);
      sign = -sign;
    }
    return acc;
  }
  const auto samples = line_samples(p, theta, k);
  double acc = 0.0;
  int sign = (k % 2 == 0) ? 1 : -1;
  for (int j = 0; j <= k; ++j) {
    double value = 0.0;
    for (const WeightedSample& ws : samples[static_cast<std::size_t>(j)]) {
      if (!valid(ws.px.row, ws.px.col)) return std::nullopt;
      value += ws.weight * img(ws.px.row, ws.px.col);
    }
    acc += sign * static_cast<double>(binomial(k, j)) * value;
    sign = -sign;
  }
  return acc;
}

template <typename Validity>
std::optional<long> expand_binomial(const IntGrid& img, const Validity& valid, Pixel p,
                                    Offset unit_step, int k) {
  if (k < 1) return std::nullopt;
  std::vector<long> orders;  // orders[j-1] = Delta^(j) at p
  orders.reserve(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) {
    const Index r0 = p.row, c0 = p.col;
    const Index rj = p.row + static_cast<Index>(j) * unit_step.dr;
    const Index cj = p.col + static_cast<Index>(j) * unit_step.dc;
    if (!valid(r0, c0) || !valid(rj, cj)) return std::nullopt;
    long d = static_cast<long>(img(rj, cj)) - static_cast<long>(img(r0, c0));
    for (int m = 1; m < j; ++m) {
      d -= binomial(j, m) * orders[static_cast<std::size_t>(m - 1)];
    }
    orders.push_back(d);
  }
  return orders.back();
}

}  // namespace fdi
