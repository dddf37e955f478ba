#include "fdi/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace fdi {

void EngineConfig::validate() const {
  if (half_width < 1) throw std::invalid_argument("patch half-width must be >= 1");
  if (max_order < 1 || max_order > kMaxDiffOrder) {
    throw std::invalid_argument("finite-difference order must be in [1, 3]");
  }
  if (max_scans < 1) throw std::invalid_argument("max scans must be >= 1");
  if (rel_tol < 0.0) throw std::invalid_argument("relative tolerance must be >= 0");
  if (initial_fill_value < 0 || initial_fill_value > 255) {
    throw std::invalid_argument("initial fill value must be an 8-bit sample");
  }
}

ByteGrid causal_support(const InpaintMask& mask, Pixel p, const PatchSpec& spec) {
  const int L = spec.half_width;
  ByteGrid grid = ByteGrid::Zero(spec.side(), spec.side());
  for (int a = -L; a <= L; ++a) {
    for (int b = -L; b <= L; ++b) {
      if (a == 0 && b == 0) continue;
      if (mask.usable(p.row + a, p.col + b)) grid(a + L, b + L) = 1;
    }
  }
  return grid;
}

namespace {

TrainingSet build_training(const InpaintMask& mask, const PatchSpec& spec,
                           const TrainingSpec& ts) {
  switch (ts.kind) {
    case TrainingSpec::Kind::FullImage:
      return training_set_full(mask, spec);
    case TrainingSpec::Kind::Rectangles:
      return training_set_rects(mask, spec, ts.rects);
    case TrainingSpec::Kind::MaskFile:
      return training_set_mask(mask, spec, ts.allow);
  }
  throw std::logic_error("unreachable training kind");
}

struct BoundaryEntry {
  bool scored = false;
  PriorityRecord rec;
  std::optional<MatchResult> match;  // empty while scored: deferred
};

class PlaneEngine {
 public:
  PlaneEngine(const IntGrid& plane, const InpaintMask& mask, const EngineConfig& cfg)
      : cfg_(cfg), plane_(plane), mask_(mask), spec_(cfg.half_width), conf_(mask) {
    cfg_.validate();
    if (mask_.rows() != plane_.rows() || mask_.cols() != plane_.cols()) {
      throw std::invalid_argument("mask dimensions differ from the image");
    }
    if (mask_.missing_count() == 0) {
      throw std::invalid_argument("mask marks no pixel to inpaint");
    }
    for (Index r = 0; r < mask_.rows(); ++r) {
      for (Index c = 0; c < mask_.cols(); ++c) {
        if (mask_.missing(r, c)) {
          plane_(r, c) = cfg_.initial_fill_value;
          omega_.push_back({static_cast<int>(r), static_cast<int>(c)});
        }
      }
    }
    tset_ = build_training(mask_, spec_, cfg_.training);
    if (tset_.empty()) {
      throw EmptyTrainingSetError("training set is empty: no fully known candidate window");
    }
  }

  PlaneResult run() {
    fill_scan();
    refinement_scans();
    return {std::move(plane_), std::move(trace_)};
  }

 private:
  long key(Pixel p) const { return static_cast<long>(p.row) * mask_.cols() + p.col; }
  Pixel unkey(long k) const {
    return {static_cast<int>(k / mask_.cols()), static_cast<int>(k % mask_.cols())};
  }

  BoundaryEntry score(Pixel p) const {
    BoundaryEntry e;
    e.scored = true;
    e.rec.px = p;
    e.rec.c_patch = patch_confidence(conf_, p, spec_);
    e.rec.d_m = data_term(plane_, mask_, p);
    e.match = best_match(plane_, mask_, p, tset_, spec_, cfg_.max_order, cfg_.content_only);
    if (e.match) {
      e.rec.e_t_best = e.match->e_t;
      e.rec.p_star = priority_star(e.rec.c_patch, e.rec.d_m, e.rec.e_t_best, kMaxValue,
                                   cfg_.invert_energy_priority);
    } else {
      e.rec.p_star = -std::numeric_limits<double>::infinity();  // deferred
    }
    return e;
  }

  void fill_scan() {
    std::map<long, BoundaryEntry> cache;  // keyed in raster order
    for (const Pixel& p : boundary(mask_)) cache.emplace(key(p), BoundaryEntry{});
    long commit_index = 0;
    bool widened = false;

    while (mask_.missing_count() > 0) {
      if (cache.empty()) {
        throw FillDeadlockError("no boundary pixel available while the region is unfilled");
      }
      // Score pending entries, then take the max-priority pixel; raster
      // order breaks ties so runs are reproducible.
      const BoundaryEntry* best = nullptr;
      long best_key = -1;
      for (auto& [k, entry] : cache) {
        if (!entry.scored) entry = score(unkey(k));
        if (!best || entry.rec.p_star > best->rec.p_star) {
          best = &entry;
          best_key = k;
        }
      }
      if (!best->match) {
        // Every boundary pixel is deferred: widen the neighborhood once,
        // then give up with diagnostics.
        if (!widened) {
          widened = true;
          trace_.widened = true;
          spec_ = PatchSpec(spec_.half_width + 1);
          tset_ = build_training(mask_, spec_, cfg_.training);
          if (tset_.empty()) {
            throw EmptyTrainingSetError("training set is empty after widening the patch");
          }
          for (auto& [k, entry] : cache) entry = score(unkey(k));
          continue;
        }
        throw FillDeadlockError("every boundary pixel is deferred (no valid pair); missing=" +
                                std::to_string(mask_.missing_count()));
      }

      const Pixel px = unkey(best_key);
      const MatchResult match = *best->match;
      const PriorityRecord rec = best->rec;
      plane_(px.row, px.col) = match.value;
      mask_.fill(px);
      trace_.commits.push_back({commit_index++, 1, px, match.value, match.e_t, rec.p_star,
                                static_cast<int>(match.tied.size())});
      if (cfg_.propagation) {
        propagate_confidence(conf_, mask_, px, rec.c_patch, std::min(1.0, match.e_t / 2.0));
      }

      cache.erase(best_key);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          if (mask_.missing(px.row + dr, px.col + dc)) {
            cache.emplace(key({px.row + dr, px.col + dc}), BoundaryEntry{});
          }
        }
      }
      // A commit only perturbs energies, confidence, and the data term
      // within Chebyshev radius L + l of itself.
      const int radius = spec_.half_width + cfg_.max_order;
      for (auto it = cache.begin(); it != cache.end();) {
        const Pixel q = unkey(it->first);
        if (cfg_.recompute_all_priorities || chebyshev(q, px) <= radius) {
          it->second = BoundaryEntry{};
        }
        ++it;
      }
    }
    const double end_total = evaluate_total();
    trace_.scans.push_back({1, end_total, commit_index, commit_index});
    if (end_total == 0.0) trace_.stable_scan = 1;
  }

  // Total inpainting energy of the current reconstruction: the per-pixel
  // best-match energy summed over the region, measured on the completed
  // state at the end of a scan.
  double evaluate_total() const {
    double total = 0.0;
    for (const Pixel& px : omega_) {
      const auto match =
          best_match(plane_, mask_, px, tset_, spec_, cfg_.max_order, cfg_.content_only);
      if (match) total += match->e_t;
    }
    return total;
  }

  void refinement_scans() {
    if (trace_.stable_scan == 1) return;  // scan 1 already at zero energy
    long commit_index = trace_.commits.empty() ? 0 : trace_.commits.back().index + 1;
    double prev_total = trace_.scans.back().total_e_t;
    for (int t = 2; t <= cfg_.max_scans; ++t) {
      long changed = 0;
      for (const Pixel& px : omega_) {
        const auto match =
            best_match(plane_, mask_, px, tset_, spec_, cfg_.max_order, cfg_.content_only);
        if (!match) continue;
        if (match->value != plane_(px.row, px.col)) {
          plane_(px.row, px.col) = match->value;
          ++changed;
        }
        trace_.commits.push_back({commit_index++, t, px, match->value, match->e_t, 0.0,
                                  static_cast<int>(match->tied.size())});
      }
      const double total = evaluate_total();
      trace_.scans.push_back({t, total, static_cast<long>(omega_.size()), changed});
      if (changed == 0) {
        trace_.stable_scan = t;
        break;
      }
      if (total == 0.0) break;
      // Plateau rule: a sufficiently small decrease ends the run; an
      // increase keeps refining up to the scan cap.
      const double decrease = (prev_total - total) / prev_total;
      if (decrease >= 0.0 && decrease < cfg_.rel_tol) break;
      prev_total = total;
    }
  }

  static constexpr int kMaxValue = 255;

  EngineConfig cfg_;
  IntGrid plane_;
  InpaintMask mask_;
  PatchSpec spec_;
  ConfidenceField conf_;
  TrainingSet tset_;
  std::vector<Pixel> omega_;  // raster order
  ScanTrace trace_;
};

}  // namespace

PlaneResult inpaint_plane(const IntGrid& plane, const InpaintMask& mask,
                          const EngineConfig& cfg) {
  PlaneEngine engine(plane, mask, cfg);
  return engine.run();
}

ImageResult inpaint(const RasterImage& img, const InpaintMask& mask, const EngineConfig& cfg) {
  ImageResult out;
  out.image.bit_depth = img.bit_depth;
  for (int c = 0; c < img.channels(); ++c) {
    PlaneResult r = inpaint_plane(img.plane(c), mask, cfg);
    out.image.planes.push_back(std::move(r.plane));
    out.traces.push_back(std::move(r.trace));
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string energy_trend_csv(const ScanTrace& trace) {
  std::ostringstream out;
  out << "scan,total_e_t\n";
  for (const ScanStats& s : trace.scans) {
    out << s.scan << "," << format_double(s.total_e_t) << "\n";
  }
  return out.str();
}

std::string energy_trend_csv(const std::vector<ScanTrace>& traces) {
  if (traces.size() == 1) return energy_trend_csv(traces.front());
  std::size_t max_scans = 0;
  for (const ScanTrace& t : traces) max_scans = std::max(max_scans, t.scans.size());
  std::ostringstream out;
  out << "scan,total_e_t\n";
  for (std::size_t i = 0; i < max_scans; ++i) {
    double total = 0.0;
    for (const ScanTrace& t : traces) {
      const std::size_t j = std::min(i, t.scans.size() - 1);
      total += t.scans[j].total_e_t;
    }
    out << (i + 1) << "," << format_double(total) << "\n";
  }
  return out.str();
}

std::string commit_log_csv(const ScanTrace& trace) {
  std::ostringstream out;
  out << "commit,scan,row,col,value,e_t,p_star,ties\n";
  for (const CommitRecord& c : trace.commits) {
    out << c.index << "," << c.scan << "," << c.px.row << "," << c.px.col << "," << c.value << ","
        << format_double(c.e_t) << "," << format_double(c.p_star) << "," << c.ties << "\n";
  }
  return out.str();
}

}  // namespace fdi
