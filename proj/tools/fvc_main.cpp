#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fvc/analyze.hpp"
#include "fvc/errors.hpp"
#include "fvc/image_io.hpp"
#include "fvc/report.hpp"
#include "fvc/synth.hpp"
#include "fvc/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("FVC_LOG");
    if (!env) return LogLevel::Warn;
    const std::string v = env;
    if (v == "debug" || v == "3") return LogLevel::Debug;
    if (v == "info" || v == "2") return LogLevel::Info;
    if (v == "warn" || v == "1") return LogLevel::Warn;
    return LogLevel::Error;
  }();
  return level;
}

void log_at(LogLevel lvl, const std::string& msg) {
  static std::mutex mu;
  if (lvl > log_level()) return;
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "fvc [" << kNames[static_cast<int>(lvl)] << "] " << msg
            << "\n";
}

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitNoFrame = 2;
constexpr int kExitNoLines = 3;
constexpr int kExitInsufficientLines = 4;
constexpr int kExitUsage = 64;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const fvc::NoFrameFound*>(&e)) return kExitNoFrame;
  if (dynamic_cast<const fvc::InsufficientLines*>(&e)) {
    return kExitInsufficientLines;
  }
  if (dynamic_cast<const fvc::NoLinesFound*>(&e)) return kExitNoLines;
  return kExitIo;
}

std::string error_label(const std::exception& e) {
  switch (exit_code_for(e)) {
    case kExitNoFrame:
      return "NoFrameFound";
    case kExitNoLines:
      return "NoLinesFound";
    case kExitInsufficientLines:
      return "InsufficientLines";
    default:
      return "Error";
  }
}

// ---------------------------------------------------------------------------
// Options plumbing

struct PipelineOptions {
  std::vector<float> hsv_lo{70.0f, 0.0f, 110.0f};
  std::vector<float> hsv_hi{180.0f, 255.0f, 255.0f};
  int segments = 1;
  int superpixels = 300;
  double compactness = 10.0;
  std::string green_mode = "hue";
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--segments", segments, "Frame segment count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--superpixels", superpixels, "SLIC superpixel target")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--compactness", compactness, "SLIC compactness weight")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--hsv-lo", hsv_lo, "Frame threshold lower bound H,S,V")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--hsv-hi", hsv_hi, "Frame threshold upper bound H,S,V")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--green-mode", green_mode,
                    "Vegetation criterion: hue or exg")
        ->check(CLI::IsMember({"hue", "exg"}))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Hough sampling seed")
        ->capture_default_str();
  }

  fvc::PipelineConfig to_config() const {
    fvc::PipelineConfig cfg;
    cfg.hsv.lo = {hsv_lo[0], hsv_lo[1], hsv_lo[2]};
    cfg.hsv.hi = {hsv_hi[0], hsv_hi[1], hsv_hi[2]};
    cfg.slic.k = superpixels;
    cfg.slic.m = compactness;
    cfg.green.mode = green_mode == "exg"
                         ? fvc::GreenCriterion::Mode::ExcessGreen
                         : fvc::GreenCriterion::Mode::HueWindow;
    cfg.hough.seed = seed;
    cfg.frame_spec.n_segments = segments;
    return cfg;
  }
};

ordered_json config_json(const fvc::PipelineConfig& cfg) {
  ordered_json j;
  j["hsv_lo"] = {cfg.hsv.lo[0], cfg.hsv.lo[1], cfg.hsv.lo[2]};
  j["hsv_hi"] = {cfg.hsv.hi[0], cfg.hsv.hi[1], cfg.hsv.hi[2]};
  j["median_k"] = cfg.frame.median_k;
  j["canny_low"] = cfg.frame.canny_low;
  j["canny_high"] = cfg.frame.canny_high;
  j["min_area_frac"] = cfg.frame.min_area_frac;
  j["superpixels"] = cfg.slic.k;
  j["compactness"] = cfg.slic.m;
  j["slic_max_iters"] = cfg.slic.max_iters;
  j["slic_residual_eps"] = cfg.slic.residual_eps;
  j["green_mode"] =
      cfg.green.mode == fvc::GreenCriterion::Mode::ExcessGreen ? "exg" : "hue";
  j["green_hue_lo"] = cfg.green.hue_lo;
  j["green_hue_hi"] = cfg.green.hue_hi;
  j["green_s_min"] = cfg.green.s_min;
  j["green_v_min"] = cfg.green.v_min;
  j["green_exg_threshold"] = cfg.green.exg_threshold;
  j["hough_rho_res"] = cfg.hough.rho_res;
  j["hough_theta_res_deg"] = cfg.hough.theta_res_deg;
  j["hough_vote_start"] = cfg.hough.vote_start;
  j["hough_vote_step"] = cfg.hough.vote_step;
  j["hough_vote_floor"] = cfg.hough.vote_floor;
  j["hough_sample_fraction"] = cfg.hough.sample_fraction;
  j["hough_min_len"] = cfg.hough.min_len;
  j["hough_max_gap"] = cfg.hough.max_gap;
  j["seed"] = cfg.hough.seed;
  j["extend_factor"] = cfg.extend_factor;
  j["inner_width_in"] = cfg.frame_spec.inner_width_in;
  j["inner_height_in"] = cfg.frame_spec.inner_height_in;
  j["n_segments"] = cfg.frame_spec.n_segments;
  return j;
}

// ---------------------------------------------------------------------------
// analyze

void draw_segment(fvc::Rgb8Image& img, const fvc::LineSegment& s,
                  const Eigen::Vector3i& color) {
  const double len = s.length();
  const int steps = std::max(1, static_cast<int>(std::ceil(len)));
  for (int i = 0; i <= steps; ++i) {
    const fvc::Point p = s.p0 + (static_cast<double>(i) / steps) * (s.p1 - s.p0);
    const fvc::Index x = static_cast<fvc::Index>(std::lround(p.x()));
    const fvc::Index y = static_cast<fvc::Index>(std::lround(p.y()));
    if (!img.in_bounds(x, y)) continue;
    for (int c = 0; c < 3; ++c) {
      img.at(x, y, c) = static_cast<std::uint8_t>(color[c]);
    }
  }
}

ordered_json result_json(const std::string& filename,
                         const fvc::AnalysisResult& result,
                         const fvc::PipelineConfig& cfg) {
  ordered_json j;
  j["tool"] = "fvc";
  j["version"] = fvc::kVersion;
  j["filename"] = filename;
  j["segments"] = ordered_json::array();
  for (const fvc::CoverReport& r : result.reports) {
    ordered_json s;
    s["segment"] = r.segment_index;
    s["polygon_pixels"] = r.polygon_pixels;
    s["vegetation_pixels"] = r.vegetation_pixels;
    s["percent"] = r.percent;
    s["area_sq_in"] = r.area_sq_in;
    s["area_sq_cm"] = r.area_sq_cm;
    s["daubenmire_class"] = r.daubenmire_class;
    j["segments"].push_back(s);
  }
  j["config"] = config_json(cfg);
  return j;
}

void write_overlays(const std::string& dir, const fvc::AnalysisResult& res) {
  fs::create_directories(dir);
  const fs::path base(dir);
  fvc::save_png((base / "rectified.png").string(), res.frame.rectified);
  fvc::save_png((base / "vegetation_overlay.png").string(),
                fvc::vegetation_overlay(res.frame.rectified, res.vegetation));

  fvc::Rgb8Image lines = res.frame.rectified;
  for (const fvc::LineSegment& s : res.lines) {
    draw_segment(lines, s, {220, 40, 40});
  }
  fvc::save_png((base / "lines.png").string(), lines);

  for (std::size_t i = 0; i < res.segment_masks.size(); ++i) {
    fvc::save_png((base / ("segment_" + std::to_string(i) + ".png")).string(),
                  res.segment_masks[i]);
  }
}

int cmd_analyze(const std::string& image_path, const PipelineOptions& opts,
                const std::string& out_file, const std::string& overlay_dir) {
  const fvc::PipelineConfig cfg = opts.to_config();
  try {
    const fvc::Rgb8Image img = fvc::load_image(image_path);
    log_at(LogLevel::Info, "loaded " + image_path);
    const fvc::AnalysisResult result = fvc::analyze_image(img, cfg);
    for (const fvc::CoverReport& r : result.reports) {
      log_at(LogLevel::Info,
             "segment " + std::to_string(r.segment_index) + ": " +
                 std::to_string(r.percent) + "% cover");
    }

    const ordered_json j =
        result_json(fs::path(image_path).filename().string(), result, cfg);
    if (out_file.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::ofstream out(out_file);
      if (!out) throw fvc::IoError("cannot write " + out_file);
      out << j.dump(2) << "\n";
    }
    if (!overlay_dir.empty()) write_overlays(overlay_dir, result);
    return kExitOk;
  } catch (const std::exception& e) {
    log_at(LogLevel::Error, e.what());
    return exit_code_for(e);
  }
}

// ---------------------------------------------------------------------------
// batch

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

int cmd_batch(const std::string& dir, const PipelineOptions& opts,
              const std::string& csv_file, int jobs) {
  const fvc::PipelineConfig cfg = opts.to_config();

  std::vector<fs::path> files;
  try {
    for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && has_image_extension(e.path())) {
        files.push_back(e.path());
      }
    }
  } catch (const fs::filesystem_error& e) {
    log_at(LogLevel::Error, e.what());
    return kExitIo;
  }
  std::sort(files.begin(), files.end());

  // Every worker grabs the next unclaimed image; rows are stitched back in
  // file order afterwards so parallelism never changes output bytes.
  std::vector<std::vector<std::string>> rows(files.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      const std::string name = files[i].filename().string();
      try {
        const fvc::Rgb8Image img = fvc::load_image(files[i].string());
        const fvc::AnalysisResult result = fvc::analyze_image(img, cfg);
        for (const fvc::CoverReport& r : result.reports) {
          rows[i].push_back(fvc::csv_row(name, r));
        }
      } catch (const std::exception& e) {
        rows[i].push_back(fvc::csv_error_row(name, error_label(e)));
        failures.fetch_add(1);
        log_at(LogLevel::Warn, name + ": " + e.what());
      }
    }
  };

  const int n_jobs = std::max(
      1, jobs > 0 ? jobs
                  : static_cast<int>(std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int i = 0; i < n_jobs; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::ostream* out = &std::cout;
  std::ofstream file_out;
  if (!csv_file.empty()) {
    file_out.open(csv_file);
    if (!file_out) {
      log_at(LogLevel::Error, "cannot write " + csv_file);
      return kExitIo;
    }
    out = &file_out;
  }
  *out << fvc::kCsvHeader << "\n";
  for (const std::vector<std::string>& image_rows : rows) {
    for (const std::string& row : image_rows) *out << row << "\n";
  }
  if (failures.load() > 0) {
    log_at(LogLevel::Warn,
           std::to_string(failures.load()) + " of " +
               std::to_string(files.size()) + " images failed");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(const std::string& ours_path, const std::string& ref_path) {
  try {
    const fvc::CsvTable ours = fvc::read_csv(ours_path);
    const fvc::CsvTable ref = fvc::read_csv(ref_path);
    const fvc::CompareStats st = fvc::compare_reports(ours, ref);
    std::printf("rows\t%zu\n", st.n);
    std::printf("cosine_similarity\t%.6f\n", st.cosine);
    std::printf("mean_ours\t%.4f\n", st.mean_ours);
    std::printf("mean_ref\t%.4f\n", st.mean_ref);
    std::printf("median_ours\t%.4f\n", st.median_ours);
    std::printf("median_ref\t%.4f\n", st.median_ref);
    return kExitOk;
  } catch (const std::exception& e) {
    log_at(LogLevel::Error, e.what());
    return exit_code_for(e);
  }
}

// ---------------------------------------------------------------------------
// synth

fvc::SceneSpec scene_from_json(const nlohmann::json& j) {
  fvc::SceneSpec spec;
  spec.width = j.value("width", spec.width);
  spec.height = j.value("height", spec.height);
  spec.n_segments = j.value("segments", spec.n_segments);
  spec.bar_width = j.value("bar_width", spec.bar_width);
  spec.noise_amplitude = j.value("noise_amplitude", spec.noise_amplitude);
  spec.frame_w_frac = j.value("frame_w_frac", spec.frame_w_frac);
  spec.frame_h_frac = j.value("frame_h_frac", spec.frame_h_frac);
  spec.tilt_deg = j.value("tilt_deg", spec.tilt_deg);
  spec.seed = j.value("seed", spec.seed);

  auto color = [&j](const char* key, Eigen::Vector3i fallback) {
    if (!j.contains(key)) return fallback;
    const auto& a = j.at(key);
    return Eigen::Vector3i(a.at(0).get<int>(), a.at(1).get<int>(),
                           a.at(2).get<int>());
  };
  spec.frame_color = color("frame_color", spec.frame_color);
  spec.background = color("background", spec.background);
  spec.vegetation_color = color("vegetation_color", spec.vegetation_color);

  if (j.contains("fractions")) {
    for (const auto& f : j.at("fractions")) {
      fvc::SegmentVegetation v;
      v.fraction = f.get<double>();
      spec.vegetation.push_back(v);
    }
  }
  if (j.contains("vegetation")) {
    spec.vegetation.clear();
    for (const auto& seg : j.at("vegetation")) {
      fvc::SegmentVegetation v;
      v.fraction = seg.value("fraction", 0.0);
      if (seg.contains("polygons")) {
        for (const auto& poly : seg.at("polygons")) {
          fvc::Polygon p;
          for (const auto& pt : poly) {
            p.vertices.emplace_back(pt.at(0).get<double>(),
                                    pt.at(1).get<double>());
          }
          v.polygons.push_back(std::move(p));
        }
      }
      spec.vegetation.push_back(std::move(v));
    }
  }
  return spec;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
  try {
    std::ifstream in(spec_path);
    if (!in) throw fvc::IoError("cannot open " + spec_path);
    nlohmann::json doc = nlohmann::json::parse(in);
    const nlohmann::json scenes =
        doc.is_array() ? doc : doc.at("scenes");

    fs::create_directories(out_dir);
    std::ofstream gt_csv(fs::path(out_dir) / "ground_truth.csv");
    if (!gt_csv) throw fvc::IoError("cannot write ground truth csv");
    gt_csv << "filename,segment,opening_pixels,vegetation_pixels,fraction,"
              "percent\n";

    int index = 0;
    for (const auto& entry : scenes) {
      const std::string name =
          entry.value("name", "scene_" + std::to_string(index));
      const fvc::SceneSpec spec = scene_from_json(entry);
      const auto [img, gt] = fvc::render(spec);
      const std::string filename = name + ".png";
      fvc::save_png((fs::path(out_dir) / filename).string(), img);
      for (std::size_t s = 0; s < gt.segments.size(); ++s) {
        const fvc::SegmentTruth& t = gt.segments[s];
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f,%.4f", t.fraction,
                      100.0 * t.fraction);
        gt_csv << filename << ',' << s << ',' << t.opening_pixels << ','
               << t.vegetation_pixels << ',' << buf << "\n";
      }
      log_at(LogLevel::Info, "rendered " + filename);
      ++index;
    }
    return kExitOk;
  } catch (const nlohmann::json::exception& e) {
    log_at(LogLevel::Error, std::string("spec: ") + e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    log_at(LogLevel::Error, e.what());
    return exit_code_for(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional vegetation cover from frame photographs"};
  app.set_version_flag("--version", fvc::kVersion);
  app.require_subcommand(1);

  // analyze
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Measure one photograph and print a JSON report");
  std::string image_path;
  std::string out_file;
  std::string overlay_dir;
  PipelineOptions analyze_opts;
  analyze->add_option("image", image_path, "Photograph to analyze")
      ->required();
  analyze_opts.attach(analyze);
  analyze->add_option("--out", out_file, "Write the JSON report here");
  analyze->add_option("--overlay", overlay_dir,
                      "Write diagnostic images into this directory");

  // batch
  CLI::App* batch = app.add_subcommand(
      "batch", "Process a directory of photographs into a CSV");
  std::string batch_dir;
  std::string csv_file;
  int jobs = 0;
  PipelineOptions batch_opts;
  batch->add_option("dir", batch_dir, "Directory of images")->required();
  batch_opts.attach(batch);
  batch->add_option("--csv", csv_file, "Write CSV here (default stdout)");
  batch->add_option("--jobs", jobs, "Worker threads (default: all cores)");

  // compare
  CLI::App* compare = app.add_subcommand(
      "compare", "Cosine similarity between two report CSVs");
  std::string ours_path;
  std::string ref_path;
  compare->add_option("--ours", ours_path, "Our report CSV")->required();
  compare->add_option("--ref", ref_path, "Reference CSV")->required();

  // synth
  CLI::App* synth = app.add_subcommand(
      "synth", "Render synthetic scenes with ground truth");
  std::string spec_path;
  std::string synth_out;
  synth->add_option("--spec", spec_path, "Scene spec JSON")->required();
  synth->add_option("--out", synth_out, "Output directory")->required();

  // config
  CLI::App* config = app.add_subcommand(
      "config", "Print the default configuration as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  if (analyze->parsed()) {
    return cmd_analyze(image_path, analyze_opts, out_file, overlay_dir);
  }
  if (batch->parsed()) {
    return cmd_batch(batch_dir, batch_opts, csv_file, jobs);
  }
  if (compare->parsed()) return cmd_compare(ours_path, ref_path);
  if (synth->parsed()) return cmd_synth(spec_path, synth_out);
  if (config->parsed()) {
    std::cout << config_json(fvc::PipelineConfig{}).dump(2) << "\n";
    return kExitOk;
  }
  return kExitUsage;
}
