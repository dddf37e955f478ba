#include "fdi/finite_diff.hpp"

#include <cstdlib>
#include <stdexcept>

namespace fdi {

DirectionSet DirectionSet::ring(int k) {
  if (k < 1) throw std::invalid_argument("direction ring order must be >= 1");
  DirectionSet set;
  set.order = k;
  set.directions.reserve(static_cast<std::size_t>(8) * k);
  // Walk the square ring counter-clockwise starting at (0, k). Rows grow
  // downward, so counter-clockwise on screen means decreasing row first.
  Offset cur{0, k};
  auto step_until = [&](int dr, int dc, Offset stop) {
    while (!(cur == stop)) {
      set.directions.push_back(cur);
      cur.dr += dr;
      cur.dc += dc;
    }
  };
  step_until(-1, 0, {-k, k});   // right edge, upward
  step_until(0, -1, {-k, -k});  // top edge, leftward
  step_until(1, 0, {k, -k});    // left edge, downward
  step_until(0, 1, {k, k});     // bottom edge, rightward
  step_until(-1, 0, {0, k});    // back up to the start
  return set;
}

DiffNormalization DiffNormalization::order_k(int k, int max_value) {
  if (k < 1) throw std::invalid_argument("finite-difference order must be >= 1");
  DiffNormalization n;
  n.order = k;
  n.r_k = 8L * k * (8L * k - 1);
  n.beta_k = std::ldexp(1.0, -k);
  n.range = (1L << k) * max_value;
  return n;
}

long binomial(int n, int j) {
  if (j < 0 || j > n) return 0;
  long num = 1;
  for (int i = 0; i < j; ++i) num = num * (n - i) / (i + 1);
  return num;
}

bool on_lattice(Offset theta, int k) {
  return theta.dr % k == 0 && theta.dc % k == 0;
}

std::vector<std::vector<WeightedSample>> line_samples(Pixel p, Offset theta, int k) {
  if (k < 1) throw std::invalid_argument("line_samples: order must be >= 1");
  std::vector<std::vector<WeightedSample>> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    // Exact rational coordinates j*theta/k, split into integer and
    // fractional parts without floating-point division noise.
    const long nr = static_cast<long>(j) * theta.dr;
    const long nc = static_cast<long>(j) * theta.dc;
    const long qr = nr >= 0 ? nr / k : -((-nr + k - 1) / k);
    const long qc = nc >= 0 ? nc / k : -((-nc + k - 1) / k);
    const long rem_r = nr - qr * k;  // in [0, k)
    const long rem_c = nc - qc * k;
    const int base_r = p.row + static_cast<int>(qr);
    const int base_c = p.col + static_cast<int>(qc);
    const double fr = static_cast<double>(rem_r) / k;
    const double fc = static_cast<double>(rem_c) / k;
    std::vector<WeightedSample> sample;
    const double w[2][2] = {{(1 - fr) * (1 - fc), (1 - fr) * fc}, {fr * (1 - fc), fr * fc}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (w[a][b] != 0.0) sample.push_back({{base_r + a, base_c + b}, w[a][b]});
      }
    }
    out.push_back(std::move(sample));
  }
  return out;
}

bool telescope_check(const IntGrid& img, Index row, Index i, int k) {
  if (k < 1) throw std::invalid_argument("telescope_check: order must be >= 1");
  if (row < 0 || row >= img.rows() || i < 0 || i + k >= img.cols()) {
    throw std::out_of_range("telescope_check: samples leave the image");
  }
  long acc = img(row, i);
  for (int t = 0; t < k; ++t) {
    acc += static_cast<long>(img(row, i + t + 1)) - static_cast<long>(img(row, i + t));
  }
  return acc == static_cast<long>(img(row, i + k));
}

}  // namespace fdi
