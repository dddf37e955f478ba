// fdi: exemplar-based inpainting with a finite-difference structure term.
//
// Subcommands:
//   inpaint   fill a masked region of an image
//   analyze   equivalence-class and chessboard-configuration reports
//   bench     timing runs over the bundled synthetic scenarios
//   synth     generate the bundled synthetic images and rectangle masks

#include <CLI11.hpp>

#include "fdi/analysis.hpp"
#include "fdi/engine.hpp"
#include "fdi/image_io.hpp"
#include "fdi/manifest.hpp"
#include "fdi/scenarios.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDeadlock = 3;

std::vector<int> parse_side_range(const std::string& text) {
  // start:stop:step, inclusive; ":" separators.
  int start = 0, stop = 0, step = 2;
  const int n = std::sscanf(text.c_str(), "%d:%d:%d", &start, &stop, &step);
  if (n < 2 || step <= 0) throw CLI::ValidationError("--sides expects start:stop:step");
  std::vector<int> sides;
  for (int s = start; s <= stop; s += step) sides.push_back(s);
  if (sides.empty()) throw CLI::ValidationError("--sides range is empty");
  return sides;
}

fdi::Rect parse_rect(const std::string& text) {
  int x = 0, y = 0, w = 0, h = 0;
  if (std::sscanf(text.c_str(), "%d,%d,%d,%d", &x, &y, &w, &h) != 4 || w <= 0 || h <= 0) {
    throw CLI::ValidationError("rectangle expects x,y,w,h with positive size");
  }
  return fdi::Rect{y, x, h, w};  // x is the column, y the row
}

fdi::Pixel parse_pixel(const std::string& text) {
  int r = 0, c = 0;
  if (std::sscanf(text.c_str(), "%d,%d", &r, &c) != 2) {
    throw CLI::ValidationError("pixel expects row,col");
  }
  return fdi::Pixel{r, c};
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw fdi::IoError("cannot open " + path + " for writing");
  out << text;
}

std::string default_out_path(const std::string& image_path) {
  const auto dot = image_path.rfind('.');
  if (dot == std::string::npos) return image_path + ".inpainted.png";
  return image_path.substr(0, dot) + ".inpainted" + image_path.substr(dot);
}

struct InpaintArgs {
  std::string image, mask, out, tset_mask, energy_csv, commit_log, manifest;
  std::vector<std::string> tset_rects;
  int patch_side = 3;
  int order = 1;
  int max_scans = 10;
  double rel_tol = 1e-4;
  int initial_fill = 0;
  bool invert_energy_priority = false;
  bool no_propagation = false;
  bool content_only = false;
  bool luma_only = false;
};

int run_inpaint(const InpaintArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  if (args.patch_side < 3 || args.patch_side % 2 == 0) {
    std::cerr << "error: patch side must be odd\n";
    return kExitUsage;
  }
  fdi::RasterImage image = fdi::load_image(args.image);
  fdi::InpaintMask mask = fdi::load_mask(args.mask);
  if (mask.rows() != image.rows() || mask.cols() != image.cols()) {
    std::cerr << "error: mask dimensions differ from the image\n";
    return kExitUsage;
  }
  if (args.luma_only && image.channels() == 3) {
    image = fdi::RasterImage::gray(fdi::luma(image));
  }

  fdi::EngineConfig cfg;
  cfg.half_width = args.patch_side / 2;
  cfg.max_order = args.order;
  cfg.max_scans = args.max_scans;
  cfg.rel_tol = args.rel_tol;
  cfg.initial_fill_value = args.initial_fill;
  cfg.invert_energy_priority = args.invert_energy_priority;
  cfg.propagation = !args.no_propagation;
  cfg.content_only = args.content_only;
  if (!args.tset_rects.empty()) {
    cfg.training.kind = fdi::TrainingSpec::Kind::Rectangles;
    for (const std::string& r : args.tset_rects) cfg.training.rects.push_back(parse_rect(r));
  } else if (!args.tset_mask.empty()) {
    cfg.training.kind = fdi::TrainingSpec::Kind::MaskFile;
    const fdi::RasterImage allow = fdi::load_image(args.tset_mask);
    fdi::IntGrid nonzero = allow.plane(0);
    for (int c = 1; c < allow.channels(); ++c) nonzero = nonzero.max(allow.plane(c));
    cfg.training.allow = std::move(nonzero);
  }

  const fdi::ImageResult result = fdi::inpaint(image, mask, cfg);

  const std::string out_path = args.out.empty() ? default_out_path(args.image) : args.out;
  fdi::save_image(result.image, out_path);
  if (!args.energy_csv.empty()) write_text(args.energy_csv, fdi::energy_trend_csv(result.traces));
  if (!args.commit_log.empty()) {
    std::string log;
    for (const fdi::ScanTrace& t : result.traces) log += fdi::commit_log_csv(t);
    write_text(args.commit_log, log);
  }

  const auto t1 = std::chrono::steady_clock::now();
  fdi::RunManifest man;
  man.set("tool", std::string("fdi"));
  man.set("version", std::string(fdi::kToolVersion));
  man.set("command", std::string("inpaint"));
  man.set("image", args.image);
  man.set("image_fnv1a", fdi::fnv1a_file_hex(args.image));
  man.set("mask", args.mask);
  man.set("mask_fnv1a", fdi::fnv1a_file_hex(args.mask));
  man.set("patch_side", static_cast<long>(args.patch_side));
  man.set("order", static_cast<long>(args.order));
  man.set("max_scans", static_cast<long>(args.max_scans));
  man.set("rel_tol", args.rel_tol);
  man.set("initial_fill", static_cast<long>(args.initial_fill));
  man.set("invert_energy_priority", static_cast<long>(args.invert_energy_priority));
  man.set("propagation", static_cast<long>(!args.no_propagation));
  man.set("content_only", static_cast<long>(args.content_only));
  man.set("luma_only", static_cast<long>(args.luma_only));
  for (std::size_t i = 0; i < args.tset_rects.size(); ++i) {
    man.set("tset_rect_" + std::to_string(i), args.tset_rects[i]);
  }
  if (!args.tset_mask.empty()) {
    man.set("tset_mask", args.tset_mask);
    man.set("tset_mask_fnv1a", fdi::fnv1a_file_hex(args.tset_mask));
  }
  man.set("out", out_path);
  man.set("out_fnv1a", fdi::fnv1a_file_hex(out_path));
  long scans = 0, commits = 0;
  for (const fdi::ScanTrace& t : result.traces) {
    scans = std::max<long>(scans, t.scan_count());
    commits += static_cast<long>(t.commits.size());
  }
  man.set("scans", scans);
  man.set("commits", commits);
  man.set("wall_ms",
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  man.write(args.manifest.empty() ? out_path + ".manifest" : args.manifest);
  return kExitOk;
}

struct EquivalenceArgs {
  std::string image, out, probe, sides = "3:9:2", variants = "ec,ec+s1";
};

int run_equivalence(const EquivalenceArgs& args) {
  const fdi::RasterImage image = fdi::load_image(args.image);
  const fdi::IntGrid plane = image.channels() == 1 ? image.plane(0) : fdi::luma(image);
  fdi::Pixel probe{static_cast<int>(plane.rows() / 2), static_cast<int>(plane.cols() / 2)};
  if (!args.probe.empty()) probe = parse_pixel(args.probe);
  const std::vector<int> sides = parse_side_range(args.sides);
  const std::vector<std::string> variants = split_csv(args.variants);
  const auto rows = fdi::equivalence_scan(plane, probe, sides, variants);
  const std::string csv = fdi::equivalence_csv(rows);
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    write_text(args.out, csv);
  }
  return kExitOk;
}

struct ChessArgs {
  std::string out, missing;
  int cell = 5;
  int size = 50;
};

int run_chessboard(const ChessArgs& args) {
  const fdi::IntGrid board = fdi::chessboard(args.size, args.size, args.cell);
  // Default probe: the bottom-right corner pixel of the top-left cell.
  fdi::Pixel missing{args.cell - 1, args.cell - 1};
  if (!args.missing.empty()) missing = parse_pixel(args.missing);
  const auto configs = fdi::chessboard_configs(board, missing);
  const std::string csv = fdi::chessboard_csv(configs);
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    write_text(args.out, csv);
  }
  return kExitOk;
}

int run_bench(const std::string& scenario, bool list) {
  if (list) {
    for (const std::string& name : fdi::scenario_names()) std::cout << name << "\n";
    return kExitOk;
  }
  fdi::Scenario s = fdi::make_scenario(scenario);
  std::cout << "scenario " << s.name << ": " << s.image.rows() << "x" << s.image.cols()
            << ", omega=" << s.mask.missing_count() << "\n";
  const auto t0 = std::chrono::steady_clock::now();
  const fdi::ImageResult result = fdi::inpaint(s.image, s.mask, s.config);
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  long commits = 0;
  for (const fdi::ScanTrace& t : result.traces) {
    commits += static_cast<long>(t.commits.size());
    for (const fdi::ScanStats& st : t.scans) {
      std::printf("scan %d: total_e_t=%.6g commits=%ld changed=%ld\n", st.scan, st.total_e_t,
                  st.commits, st.changed);
    }
  }
  std::printf("total: %ld commits in %.1f ms (%.0f commits/s)\n", commits, ms,
              commits / (ms / 1000.0));
  return kExitOk;
}

struct SynthArgs {
  std::string kind, out;
  int rows = 0, cols = 0, cell = 5, value = 0, thickness = 1, period = 0;
  double angle = 0.0;
  std::vector<std::string> rects;  // for kind=mask
};

int run_synth(const SynthArgs& args) {
  if (args.kind == "mask") {
    if (args.rects.empty()) {
      std::cerr << "error: synth --kind mask needs at least one --rect\n";
      return kExitUsage;
    }
    fdi::IntGrid g = fdi::solid(args.rows, args.cols, 0);
    for (const std::string& text : args.rects) {
      const fdi::Rect rect = parse_rect(text);
      for (int r = rect.row; r < rect.row + rect.height; ++r) {
        for (int c = rect.col; c < rect.col + rect.width; ++c) {
          g(r, c) = 255;
        }
      }
    }
    fdi::save_image(fdi::RasterImage::gray(std::move(g)), args.out);
    return kExitOk;
  }
  fdi::SynthesisRequest req;
  req.kind = args.kind;
  req.rows = args.rows;
  req.cols = args.cols;
  req.cell = args.cell;
  req.value = args.value;
  req.thickness = args.thickness;
  req.angle_deg = args.angle;
  req.period = args.period;
  fdi::save_image(fdi::synthesize(req), args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exemplar-based inpainting with a finite-difference structure term"};
  app.require_subcommand(1);

  InpaintArgs in_args;
  CLI::App* in_cmd = app.add_subcommand("inpaint", "fill a masked region");
  in_cmd->add_option("--image", in_args.image, "input image (.pgm or .png)")->required();
  in_cmd->add_option("--mask", in_args.mask, "mask image; nonzero marks the region to fill")
      ->required();
  in_cmd->add_option("--out", in_args.out, "output image path");
  in_cmd->add_option("--patch-side", in_args.patch_side, "odd neighborhood side 2L+1");
  in_cmd->add_option("--order", in_args.order, "max finite-difference order (1..3)");
  in_cmd->add_option("--max-scans", in_args.max_scans, "scan limit");
  in_cmd->add_option("--rel-tol", in_args.rel_tol, "energy plateau stop tolerance");
  in_cmd->add_option("--initial-fill", in_args.initial_fill, "initial value inside the region");
  in_cmd->add_option("--tset-rect", in_args.tset_rects,
                     "restrict candidates to x,y,w,h (repeatable)");
  in_cmd->add_option("--tset-mask", in_args.tset_mask, "restrict candidates to a mask image");
  in_cmd->add_option("--energy-csv", in_args.energy_csv, "write the per-scan energy trend");
  in_cmd->add_option("--commit-log", in_args.commit_log, "write the per-commit log");
  in_cmd->add_option("--manifest", in_args.manifest, "manifest path (default <out>.manifest)");
  in_cmd->add_flag("--invert-energy-priority", in_args.invert_energy_priority,
                   "use 1 - e_t/2 as the priority energy factor");
  in_cmd->add_flag("--no-propagation", in_args.no_propagation,
                   "disable confidence propagation after commits");
  in_cmd->add_flag("--content-only", in_args.content_only, "drop the structure energy term");
  in_cmd->add_flag("--luma-only", in_args.luma_only, "inpaint the luma plane of RGB input");

  CLI::App* an_cmd = app.add_subcommand("analyze", "uncertainty reports");
  an_cmd->require_subcommand(1);
  EquivalenceArgs eq_args;
  CLI::App* eq_cmd = an_cmd->add_subcommand("equivalence", "minimum-energy tie counting");
  eq_cmd->add_option("--image", eq_args.image, "texture image")->required();
  eq_cmd->add_option("--probe", eq_args.probe, "probe pixel row,col (default center)");
  eq_cmd->add_option("--sides", eq_args.sides, "support sides start:stop:step");
  eq_cmd->add_option("--variants", eq_args.variants, "comma list of ec, ec+s1, ec+s2");
  eq_cmd->add_option("--out", eq_args.out, "CSV path (default stdout)");
  ChessArgs ch_args;
  CLI::App* ch_cmd = an_cmd->add_subcommand("chessboard", "missing-pixel configuration sets");
  ch_cmd->add_option("--cell", ch_args.cell, "cell side in pixels");
  ch_cmd->add_option("--size", ch_args.size, "board side in pixels");
  ch_cmd->add_option("--missing", ch_args.missing, "missing pixel row,col");
  ch_cmd->add_option("--out", ch_args.out, "CSV path (default stdout)");

  std::string bench_scenario;
  bool bench_list = false;
  CLI::App* bench_cmd = app.add_subcommand("bench", "timing runs");
  bench_cmd->add_option("--scenario", bench_scenario, "scenario name");
  bench_cmd->add_flag("--list", bench_list, "list scenario names");

  SynthArgs sy_args;
  CLI::App* sy_cmd = app.add_subcommand("synth", "generate synthetic images");
  sy_cmd->add_option("--kind", sy_args.kind,
                     "solid|chessboard|line|triangle|kanizsa|weave|burl|tiles|mask")
      ->required();
  sy_cmd->add_option("--rows", sy_args.rows)->required();
  sy_cmd->add_option("--cols", sy_args.cols)->required();
  sy_cmd->add_option("--cell", sy_args.cell);
  sy_cmd->add_option("--value", sy_args.value);
  sy_cmd->add_option("--thickness", sy_args.thickness);
  sy_cmd->add_option("--angle", sy_args.angle);
  sy_cmd->add_option("--period", sy_args.period);
  sy_cmd->add_option("--rect", sy_args.rects, "x,y,w,h marked white (kind=mask, repeatable)");
  sy_cmd->add_option("--out", sy_args.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*in_cmd) return run_inpaint(in_args);
    if (*eq_cmd) return run_equivalence(eq_args);
    if (*ch_cmd) return run_chessboard(ch_args);
    if (*bench_cmd) {
      if (!bench_list && bench_scenario.empty()) {
        std::cerr << "error: bench needs --scenario or --list\n";
        return kExitUsage;
      }
      return run_bench(bench_scenario, bench_list);
    }
    if (*sy_cmd) return run_synth(sy_args);
  } catch (const fdi::FillDeadlockError& e) {
    std::cerr << "deadlock: " << e.what() << "\n";
    return kExitDeadlock;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
