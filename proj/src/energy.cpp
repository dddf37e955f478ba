#include "fdi/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdi {

namespace {

// Rings are tiny and fixed; build them once.
const DirectionSet& ring_cached(int k) {
  static const std::array<DirectionSet, kMaxDiffOrder> rings = {
      DirectionSet::ring(1), DirectionSet::ring(2), DirectionSet::ring(3)};
  return rings.at(static_cast<std::size_t>(k - 1));
}

void check_order(int max_order) {
  if (max_order < 1 || max_order > kMaxDiffOrder) {
    throw std::invalid_argument("finite-difference order must be in [1, 3]");
  }
}

}  // namespace

std::optional<ContentEnergy> content_energy(const IntGrid& img, const InpaintMask& mask,
                                            Pixel target, Pixel cand, const PatchSpec& spec) {
  const int L = spec.half_width;
  const TargetValidity tvalid{&mask, target};
  const CandidateValidity cvalid{&mask};
  ContentEnergy e;
  for (int a = -L; a <= L; ++a) {
    for (int b = -L; b <= L; ++b) {
      if (a == 0 && b == 0) continue;
      const Index tr = target.row + a, tc = target.col + b;
      const Index cr = cand.row + a, cc = cand.col + b;
      if (!tvalid(tr, tc) || !cvalid(cr, cc)) continue;
      e.sum_sq += pointwise_distance_sq(img(tr, tc), img(cr, cc));
      ++e.valid_pairs;
    }
  }
  if (e.valid_pairs == 0) return std::nullopt;
  return e;
}

double StructureEnergy::normalized(int max_order, int max_value) const {
  check_order(max_order);
  double sum = 0.0;
  for (int k = 1; k <= max_order; ++k) {
    const DiffNormalization n = DiffNormalization::order_k(k, max_value);
    sum += (n.beta_k / static_cast<double>(n.r_k)) * raw[static_cast<std::size_t>(k - 1)] /
           static_cast<double>(n.range);
  }
  return sum;
}

std::optional<StructureEnergy> structure_energy(const IntGrid& img, const InpaintMask& mask,
                                                Pixel target, Pixel cand, const PatchSpec& spec,
                                                int max_order) {
  check_order(max_order);
  const int L = spec.half_width;
  const TargetValidity tvalid{&mask, target};
  const CandidateValidity cvalid{&mask};
  StructureEnergy e;
  bool any_pair = false;
  for (int a = -L; a <= L; ++a) {
    for (int b = -L; b <= L; ++b) {
      if (a == 0 && b == 0) continue;
      const Pixel tp{target.row + a, target.col + b};
      const Pixel cp{cand.row + a, cand.col + b};
      if (!tvalid(tp.row, tp.col) || !cvalid(cp.row, cp.col)) continue;
      any_pair = true;
      for (int k = 1; k <= max_order; ++k) {
        for (const Offset& theta : ring_cached(k).directions) {
          const auto dt = delta(img, tvalid, tp, theta, k);
          if (!dt) continue;
          const auto dc = delta(img, cvalid, cp, theta, k);
          if (!dc) continue;
          e.raw[static_cast<std::size_t>(k - 1)] += std::abs(*dt - *dc);
          ++e.terms[static_cast<std::size_t>(k - 1)];
        }
      }
    }
  }
  if (!any_pair) return std::nullopt;
  return e;
}

std::optional<EnergyBreakdown> total_energy(const IntGrid& img, const InpaintMask& mask,
                                            Pixel target, Pixel cand, const PatchSpec& spec,
                                            int max_order, bool content_only) {
  check_order(max_order);
  const auto content = content_energy(img, mask, target, cand, spec);
  if (!content) return std::nullopt;
  const int max_value = 255;  // engine is 8-bit; W generalizes via this constant

  EnergyBreakdown out;
  out.valid_pairs = content->valid_pairs;
  out.content_sum_sq = content->sum_sq;
  out.e_c_norm = std::sqrt(static_cast<double>(content->sum_sq)) /
                 (std::sqrt(static_cast<double>(content->valid_pairs)) * max_value);
  if (!content_only) {
    const auto structure = structure_energy(img, mask, target, cand, spec, max_order);
    if (structure) {
      out.structure_raw = structure->raw;
      out.structure_terms = structure->terms;
      double beta_sum = 0.0;
      for (int k = 1; k <= max_order; ++k) beta_sum += std::ldexp(1.0, -k);
      out.e_s_norm = structure->normalized(max_order, max_value) /
                     (static_cast<double>(content->valid_pairs) * beta_sum);
    }
  }
  out.e_t = out.e_c_norm + out.e_s_norm;
  return out;
}

double tie_tolerance(int max_order) { return max_order <= 1 ? 0.0 : 1e-9; }

std::optional<MatchResult> best_match(const IntGrid& img, const InpaintMask& mask, Pixel target,
                                      const TrainingSet& tset, const PatchSpec& spec,
                                      int max_order, bool content_only) {
  if (tset.empty()) throw std::invalid_argument("best_match: empty training set");
  std::vector<double> scores(tset.centers.size(), std::numeric_limits<double>::infinity());
  double min_e = std::numeric_limits<double>::infinity();
  EnergyBreakdown min_breakdown;
  bool any = false;
  for (std::size_t i = 0; i < tset.centers.size(); ++i) {
    const auto e = total_energy(img, mask, target, tset.centers[i], spec, max_order, content_only);
    if (!e) continue;
    any = true;
    scores[i] = e->e_t;
    if (e->e_t < min_e) {
      min_e = e->e_t;
      min_breakdown = *e;
    }
  }
  if (!any) return std::nullopt;

  const double tol = tie_tolerance(max_order);
  const double cutoff = min_e + tol * std::max(min_e, 1.0);
  MatchResult res;
  res.e_t = min_e;
  res.best = min_breakdown;
  std::int64_t value_sum = 0;
  for (std::size_t i = 0; i < tset.centers.size(); ++i) {
    if (scores[i] <= cutoff) {
      res.tied.push_back(tset.centers[i]);
      value_sum += img(tset.centers[i].row, tset.centers[i].col);
    }
  }
  const auto n = static_cast<std::int64_t>(res.tied.size());
  res.value = static_cast<int>((2 * value_sum + n) / (2 * n));  // mean, rounded half-up
  return res;
}

double d_cnorm(int a, int b, int max_value) {
  return 1.0 - static_cast<double>(std::abs(a - b)) / max_value;
}

double d_snorm(double da, double db, int k, int max_value) {
  return 1.0 - std::abs(da - db) / ((1L << k) * static_cast<double>(max_value));
}

MatchDiagnostics match_diagnostics(const IntGrid& img, const InpaintMask& mask, Pixel target,
                                   Pixel cand, const PatchSpec& spec, int max_order) {
  check_order(max_order);
  const int max_value = 255;
  const int L = spec.half_width;
  const TargetValidity tvalid{&mask, target};
  const CandidateValidity cvalid{&mask};
  MatchDiagnostics diag;
  const double eps = diag.epsilon;
  auto clamp_p = [eps](double p) { return std::clamp(p, eps, 1.0 - eps); };
  double prod_c = 1.0, prod_s = 1.0;
  for (int a = -L; a <= L; ++a) {
    for (int b = -L; b <= L; ++b) {
      if (a == 0 && b == 0) continue;
      const Pixel tp{target.row + a, target.col + b};
      const Pixel cp{cand.row + a, cand.col + b};
      if (!tvalid(tp.row, tp.col) || !cvalid(cp.row, cp.col)) continue;
      const double p = clamp_p(d_cnorm(img(tp.row, tp.col), img(cp.row, cp.col), max_value));
      prod_c *= std::log(1.0 - p);
      ++diag.pair_terms;
      for (int k = 1; k <= max_order; ++k) {
        for (const Offset& theta : ring_cached(k).directions) {
          const auto dt = delta(img, tvalid, tp, theta, k);
          if (!dt) continue;
          const auto dc = delta(img, cvalid, cp, theta, k);
          if (!dc) continue;
          const double ps = clamp_p(d_snorm(*dt, *dc, k, max_value));
          prod_s *= std::log(1.0 - ps);
          ++diag.direction_terms;
        }
      }
    }
  }
  diag.e_m_c = diag.pair_terms > 0 ? -prod_c : 0.0;
  diag.e_m_s = diag.direction_terms > 0 ? -prod_s : 0.0;
  return diag;
}

}  // namespace fdi
