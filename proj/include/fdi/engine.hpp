#pragma once

#include "fdi/energy.hpp"
#include "fdi/image.hpp"
#include "fdi/priority.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fdi {

struct TrainingSpec {
  enum class Kind { FullImage, Rectangles, MaskFile };
  Kind kind = Kind::FullImage;
  std::vector<Rect> rects;  // for Rectangles
  IntGrid allow;            // for MaskFile: nonzero admits the pixel
};

struct EngineConfig {
  int half_width = 1;  // L; patch side is 2L+1
  int max_order = 1;   // l; finite-difference orders 1..l
  int max_scans = 10;
  double rel_tol = 1e-4;
  int initial_fill_value = 0;
  bool invert_energy_priority = false;
  bool propagation = true;
  bool content_only = false;
  // Testing hook: recompute every boundary priority after each commit
  // instead of only those whose support intersects the commit's support.
  bool recompute_all_priorities = false;
  TrainingSpec training;

  void validate() const;
};

struct CommitRecord {
  long index = 0;
  int scan = 1;
  Pixel px;
  int value = 0;
  double e_t = 0.0;
  double p_star = 0.0;
  int ties = 1;
};

struct ScanStats {
  int scan = 1;
  double total_e_t = 0.0;  // sum of committed best energies over the scan
  long commits = 0;
  long changed = 0;  // pixels whose value changed during the scan
};

struct ScanTrace {
  std::vector<ScanStats> scans;
  std::vector<CommitRecord> commits;
  int stable_scan = 0;  // first scan that changed nothing (0: none observed)
  bool widened = false;

  int scan_count() const { return static_cast<int>(scans.size()); }
};

class EmptyTrainingSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every boundary pixel deferred and widening already spent; carries the
/// diagnostic state for the CLI's exit-3 path.
class FillDeadlockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Boolean (2L+1)^2 grid over window offsets: true where the target-side
/// pixel currently has a value; the center is always false.
ByteGrid causal_support(const InpaintMask& mask, Pixel p, const PatchSpec& spec);

/// Priority-ordered causal fill of the missing region followed by
/// raster-order refinement scans; see the project README for the loop
/// contract. Deterministic: identical inputs give bit-identical outputs.
struct PlaneResult {
  IntGrid plane;
  ScanTrace trace;
};
PlaneResult inpaint_plane(const IntGrid& plane, const InpaintMask& mask, const EngineConfig& cfg);

/// Channel-wise driver: each plane is inpainted as an independent
/// single-channel problem and the planes are joined at the end.
struct ImageResult {
  RasterImage image;
  std::vector<ScanTrace> traces;  // one per channel
};
ImageResult inpaint(const RasterImage& img, const InpaintMask& mask, const EngineConfig& cfg);

/// CSV: header scan,total_e_t and one row per scan.
std::string energy_trend_csv(const ScanTrace& trace);
/// CSV across channels: rows aligned by scan index, totals summed; a
/// channel past its last scan contributes its final total.
std::string energy_trend_csv(const std::vector<ScanTrace>& traces);
std::string commit_log_csv(const ScanTrace& trace);

}  // namespace fdi
