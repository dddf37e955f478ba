#include "fdi/analysis.hpp"

#include "fdi/energy.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fdi {

const std::vector<std::string> kEquivalenceVariants = {"ec", "ec+s1", "ec+s2"};

namespace {

struct VariantSpec {
  bool content_only;
  int max_order;
};

VariantSpec parse_variant(const std::string& name) {
  if (name == "ec") return {true, 1};
  if (name == "ec+s1") return {false, 1};
  if (name == "ec+s2") return {false, 2};
  throw std::invalid_argument("unknown energy variant: " + name);
}

}  // namespace

std::vector<EquivalenceRow> equivalence_scan(const IntGrid& img, Pixel probe,
                                             std::span<const int> sides,
                                             std::span<const std::string> variants) {
  if (sides.empty()) throw std::invalid_argument("equivalence_scan: empty side range");
  if (variants.empty()) throw std::invalid_argument("equivalence_scan: no variants");
  if (probe.row < 0 || probe.row >= img.rows() || probe.col < 0 || probe.col >= img.cols()) {
    throw std::invalid_argument("equivalence_scan: probe outside the image");
  }
  InpaintMask mask(img.rows(), img.cols());
  mask.mark_missing(probe.row, probe.col);

  std::vector<EquivalenceRow> rows;
  for (int side : sides) {
    const PatchSpec spec = PatchSpec::from_side(side);
    if (side > img.rows() || side > img.cols()) {
      throw std::invalid_argument("equivalence_scan: side " + std::to_string(side) +
                                  " exceeds the image");
    }
    const TrainingSet tset = training_set_full(mask, spec);
    if (tset.empty()) {
      throw std::invalid_argument("equivalence_scan: no candidate window at side " +
                                  std::to_string(side));
    }
    for (const std::string& name : variants) {
      const VariantSpec v = parse_variant(name);
      double min_e = std::numeric_limits<double>::infinity();
      std::vector<double> scores;
      scores.reserve(tset.size());
      for (const Pixel& cand : tset.centers) {
        const auto e = total_energy(img, mask, probe, cand, spec, v.max_order, v.content_only);
        scores.push_back(e ? e->e_t : std::numeric_limits<double>::infinity());
        if (e && e->e_t < min_e) min_e = e->e_t;
      }
      const double tol = tie_tolerance(v.max_order);
      const double cutoff = min_e + tol * std::max(min_e, 1.0);
      long ties = 0;
      for (double s : scores) {
        if (s <= cutoff) ++ties;
      }
      EquivalenceRow row;
      row.side = side;
      row.variant = name;
      row.ties = ties;
      row.tset_size = static_cast<long>(tset.size());
      row.min_e_t = min_e;
      row.trustability =
          tset.size() > 1
              ? 1.0 - static_cast<double>(ties - 1) / (static_cast<double>(tset.size()) - 1)
              : 1.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string equivalence_csv(const std::vector<EquivalenceRow>& rows) {
  std::ostringstream out;
  out << "side,variant,ties,trustability\n";
  char buf[32];
  for (const EquivalenceRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g", r.trustability);
    out << r.side << "," << r.variant << "," << r.ties << "," << buf << "\n";
  }
  return out.str();
}

std::vector<ChessboardConfig> chessboard_configs(const IntGrid& board, Pixel missing) {
  if (missing.row < 0 || missing.row >= board.rows() || missing.col < 0 ||
      missing.col >= board.cols()) {
    throw std::invalid_argument("chessboard_configs: missing pixel outside the board");
  }
  std::vector<ChessboardConfig> out;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      ChessboardConfig cfg;
      cfg.id = u * 3 + v + 1;
      cfg.missing_cell = {u, v};
      cfg.window_origin = {missing.row - u, missing.col - v};
      const Pixel o = cfg.window_origin;
      if (o.row < 0 || o.col < 0 || o.row + 3 > board.rows() || o.col + 3 > board.cols()) {
        // Placement pokes outside the board; keep the config with an empty
        // candidate set so all nine ids always report.
        out.push_back(std::move(cfg));
        continue;
      }
      for (Index r = 0; r + 3 <= board.rows(); ++r) {
        for (Index c = 0; c + 3 <= board.cols(); ++c) {
          bool match = true;
          bool covers_missing = false;
          for (int a = 0; a < 3 && match; ++a) {
            for (int b = 0; b < 3; ++b) {
              if (r + a == missing.row && c + b == missing.col) {
                covers_missing = true;
                match = false;
                break;
              }
              if (a == u && b == v) continue;  // the unknown cell is unconstrained
              if (board(r + a, c + b) != board(o.row + a, o.col + b)) {
                match = false;
                break;
              }
            }
          }
          if (match && !covers_missing) {
            cfg.candidate_origins.push_back({static_cast<int>(r), static_cast<int>(c)});
            cfg.fill_values.push_back(board(r + u, c + v));
          }
        }
      }
      out.push_back(std::move(cfg));
    }
  }
  return out;
}

std::string chessboard_csv(const std::vector<ChessboardConfig>& configs) {
  std::ostringstream out;
  out << "config,candidates,fill_value\n";
  for (const ChessboardConfig& cfg : configs) {
    int fill = -1;
    if (!cfg.fill_values.empty()) {
      fill = cfg.fill_values.front();
      for (int v : cfg.fill_values) {
        if (v != fill) {
          fill = -1;  // candidates disagree
          break;
        }
      }
    }
    out << "3." << cfg.id << "," << cfg.candidate_origins.size() << "," << fill << "\n";
  }
  return out.str();
}

}  // namespace fdi
