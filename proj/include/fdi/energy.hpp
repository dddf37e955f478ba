#pragma once

#include "fdi/finite_diff.hpp"
#include "fdi/image.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace fdi {

/// Validity for the patch being filled: a sample participates when it has a
/// value now (Known or Filled) and is not the pixel under reconstruction.
/// The excluded center keeps every energy term causal regardless of the
/// center's current mask state.
struct TargetValidity {
  const InpaintMask* mask;
  Pixel center;
  bool operator()(Index r, Index c) const {
    if (r == center.row && c == center.col) return false;
    return mask->usable(r, c);
  }
};

/// Validity for candidate patches: original Known data only. Filled pixels
/// never serve as exemplar data, which keeps candidate windows constant
/// for the whole run.
struct CandidateValidity {
  const InpaintMask* mask;
  bool operator()(Index r, Index c) const { return mask->known(r, c); }
};

constexpr int kMaxDiffOrder = 3;

/// Pointwise distance contribution: squared difference. The patch
/// aggregate takes the root, realizing the l2 norm over valid pairs.
constexpr std::int64_t pointwise_distance_sq(int x, int y) {
  const std::int64_t d = x - y;
  return d * d;
}

struct ContentEnergy {
  std::int64_t sum_sq = 0;  // sum of squared pointwise differences
  long valid_pairs = 0;     // pairs contributing under causal masking
};

/// Pairwise content sum over all offsets in the window (center excluded).
/// A pair contributes when the target-side pixel is usable and the
/// candidate-side pixel is Known. Empty result: the target pixel is
/// isolated and priority must defer it.
std::optional<ContentEnergy> content_energy(const IntGrid& img, const InpaintMask& mask,
                                            Pixel target, Pixel cand, const PatchSpec& spec);

struct StructureEnergy {
  // raw[k-1]: sum over pairs and directions of |Delta_t - Delta_c| at
  // order k, unnormalized so order-1 pipelines stay integer-exact.
  std::array<double, kMaxDiffOrder> raw{};
  std::array<long, kMaxDiffOrder> terms{};

  /// sum_k (beta_k / R_k) raw_k / (2^k (2^W - 1)).
  double normalized(int max_order, int max_value) const;
};

/// Directional finite-difference sum; a direction contributes only when
/// its samples are valid on both sides.
std::optional<StructureEnergy> structure_energy(const IntGrid& img, const InpaintMask& mask,
                                                Pixel target, Pixel cand, const PatchSpec& spec,
                                                int max_order);

struct EnergyBreakdown {
  double e_c_norm = 0.0;  // in [0, 1]
  double e_s_norm = 0.0;  // in [0, 1]
  double e_t = 0.0;       // e_c_norm + e_s_norm, in [0, 2]
  long valid_pairs = 0;
  std::int64_t content_sum_sq = 0;
  std::array<double, kMaxDiffOrder> structure_raw{};
  std::array<long, kMaxDiffOrder> structure_terms{};
};

/// Combined normalized energy:
///   e_c_norm = sqrt(content) / (sqrt(pairs) (2^W - 1))
///   e_s_norm = structure_normalized / (pairs sum_k beta_k)
/// content_only zeroes the structure term (and skips its computation).
std::optional<EnergyBreakdown> total_energy(const IntGrid& img, const InpaintMask& mask,
                                            Pixel target, Pixel cand, const PatchSpec& spec,
                                            int max_order, bool content_only = false);

struct MatchResult {
  double e_t = 0.0;
  int value = 0;            // mean of tied centers, rounded half-up
  std::vector<Pixel> tied;  // every candidate attaining the minimum
  EnergyBreakdown best;     // breakdown of the first minimal candidate
};

/// Tie tolerance: exact for the integer pipeline (orders <= 1), 1e-9
/// relative once off-axis interpolation introduces floating point.
double tie_tolerance(int max_order);

/// Exhaustive argmin over the training set with a deterministic reduction:
/// candidates are scored in raster order and ties are kept in that order,
/// so results are identical regardless of evaluation schedule. Empty when
/// the target has no valid pair against any candidate.
std::optional<MatchResult> best_match(const IntGrid& img, const InpaintMask& mask, Pixel target,
                                      const TrainingSet& tset, const PatchSpec& spec,
                                      int max_order, bool content_only = false);

struct MatchDiagnostics {
  double e_m_c = 0.0;  // -prod log(1 - E_P) over content pairs
  double e_m_s = 0.0;  // same over structure direction terms
  double epsilon = 1e-12;
  long pair_terms = 0;
  long direction_terms = 0;
};

double d_cnorm(int a, int b, int max_value);
double d_snorm(double da, double db, int k, int max_value);

/// Product-of-logs match probabilities, reported as written and clamped to
/// [eps, 1-eps] per term. Diagnostic only; never a selection criterion.
MatchDiagnostics match_diagnostics(const IntGrid& img, const InpaintMask& mask, Pixel target,
                                   Pixel cand, const PatchSpec& spec, int max_order);

}  // namespace fdi
