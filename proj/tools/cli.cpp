// Copyright 2026 The hybridsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hybridsim/device_model.hpp"
#include "hybridsim/errors.hpp"
#include "hybridsim/imaging.hpp"
#include "hybridsim/pnm.hpp"
#include "hybridsim/scheduler.hpp"

#ifndef HYBRIDSIM_VERSION
#define HYBRIDSIM_VERSION "unknown"
#endif

namespace hybridsim::cli {
namespace {

namespace fs = std::filesystem;

// Input file that is missing or cannot be read (exit 2).
class InputError : public UsageError {
 public:
  using UsageError::UsageError;
};

class Log {
 public:
  Log(std::ostream& err, int verbosity) : err_(err), verbosity_(verbosity) {}

  void info(const std::string& msg) { emit(1, msg); }
  void debug(const std::string& msg) { emit(2, msg); }
  void warn(const std::string& msg) { emit(0, "warning: " + msg); }
  void error(const std::string& msg) { emit(0, "error: " + msg); }

 private:
  void emit(int level, const std::string& msg) {
    if (level > verbosity_) return;
    std::lock_guard lock(mu_);
    err_ << "hybridsim: " << msg << '\n';
  }

  std::ostream& err_;
  int verbosity_;
  std::mutex mu_;
};

struct Failure {
  int code;
  const char* status;
};

Failure classify(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return {kExitUsage, "unreadable"};
  if (dynamic_cast<const UsageError*>(&e)) return {kExitUsage, "usage_error"};
  if (dynamic_cast<const NoLesionError*>(&e)) return {kExitNoLesion, "no_lesion"};
  if (dynamic_cast<const ParseError*>(&e)) return {kExitParse, "parse_error"};
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidParameter*>(&e) ||
      dynamic_cast<const SizeLimitError*>(&e))
    return {kExitParse, "config_error"};
  return {kExitInternal, "internal_error"};
}

std::string read_input(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError("cannot read " + path + ": no such file");
  std::ifstream in(path, std::ios::binary);
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad() || !in.is_open()) throw InputError("cannot read " + path);
  return bytes;
}

// Prefixes library errors with the file they came from, keeping the type.
template <typename F>
auto with_source(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), path + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

GrayImage load_image(const std::string& path) {
  const std::string bytes = read_input(path);
  return with_source(path, [&] { return decode_pgm(bytes); });
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

// detect ---------------------------------------------------------------------

struct DetectOutputs {
  std::string report;
  std::string overlay;
  std::string skeleton;
};

struct DetectResult {
  DetectOutputs outputs;
  int qualifying_count = 0;
  bool streaks_present = false;
  std::size_t segments = 0;
};

DetectResult detect_one(const std::string& input, const DetectionConfig& cfg,
                        bool want_overlay, bool want_skeleton) {
  const GrayImage image = load_image(input);
  const StreakDetection d = detect_streaks(image, cfg.criteria, cfg.filter);
  DetectResult r;
  r.outputs.report = report_to_json(d.report);
  if (want_overlay) r.outputs.overlay = encode_ppm(render_overlay(d));
  if (want_skeleton) r.outputs.skeleton = encode_pgm(render_mask(d.skeleton.pixels));
  r.qualifying_count = d.report.qualifying_count;
  r.streaks_present = d.report.streaks_present;
  r.segments = d.report.segments.size();
  return r;
}

std::string describe(const std::string& input, const DetectResult& r) {
  return input + ": " + std::to_string(r.segments) + " candidate segments, " +
         std::to_string(r.qualifying_count) + " qualifying, streaks " +
         (r.streaks_present ? "present" : "absent");
}

int run_detect_single(const RunConfig& c, const DetectionConfig& cfg, Log& log) {
  require(!c.report.empty(), "detect --input needs --report");
  require(c.report_dir.empty() && c.overlay_dir.empty() && c.summary.empty(),
          "--report-dir, --overlay-dir and --summary go with --input-dir");
  const DetectResult r = detect_one(c.input, cfg, !c.overlay.empty(), !c.skeleton.empty());
  std::vector<std::pair<std::string, std::string>> files = {{c.report, r.outputs.report}};
  if (!c.overlay.empty()) files.emplace_back(c.overlay, r.outputs.overlay);
  if (!c.skeleton.empty()) files.emplace_back(c.skeleton, r.outputs.skeleton);
  write_files_atomic(files);
  log.info(describe(c.input, r));
  return kExitOk;
}

std::vector<fs::path> list_pgm_files(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("cannot read directory " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (ext == ".pgm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

struct BatchRow {
  int code = kExitOk;
  std::string status = "ok";
  int qualifying_count = 0;
  bool streaks_present = false;
};

int run_detect_batch(const RunConfig& c, const DetectionConfig& cfg, Log& log) {
  require(!c.report_dir.empty(), "detect --input-dir needs --report-dir");
  require(c.report.empty() && c.overlay.empty() && c.skeleton.empty(),
          "--report, --overlay and --skeleton go with --input");
  const std::vector<fs::path> files = list_pgm_files(c.input_dir);
  std::error_code ec;
  fs::create_directories(c.report_dir, ec);
  if (!c.overlay_dir.empty()) fs::create_directories(c.overlay_dir, ec);

  std::vector<BatchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const std::string input = files[i].string();
      const std::string stem = files[i].stem().string();
      try {
        const DetectResult r = detect_one(input, cfg, !c.overlay_dir.empty(), false);
        std::vector<std::pair<std::string, std::string>> outputs = {
            {(fs::path(c.report_dir) / (stem + ".json")).string(), r.outputs.report}};
        if (!c.overlay_dir.empty())
          outputs.emplace_back((fs::path(c.overlay_dir) / (stem + ".ppm")).string(),
                               r.outputs.overlay);
        write_files_atomic(outputs);
        rows[i].qualifying_count = r.qualifying_count;
        rows[i].streaks_present = r.streaks_present;
        log.info(describe(input, r));
      } catch (const std::exception& e) {
        const Failure f = classify(e);
        rows[i].code = f.code;
        rows[i].status = f.status;
        log.error(std::string(e.what()));
      }
    }
  };
  unsigned n_threads = c.threads != 0 ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(files.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = "file,status,qualifying_count,streaks_present\n";
  int code = kExitOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    csv += files[i].filename().string() + ',' + rows[i].status + ',' +
           std::to_string(rows[i].qualifying_count) + ',' +
           (rows[i].streaks_present ? "true" : "false") + '\n';
    if (code == kExitOk) code = rows[i].code;
  }
  const std::string summary =
      !c.summary.empty() ? c.summary : (fs::path(c.report_dir) / "summary.csv").string();
  write_file_atomic(summary, csv);
  log.info(std::to_string(files.size()) + " images processed");
  return code;
}

int run_detect(const RunConfig& c, Log& log) {
  require(c.input.empty() != c.input_dir.empty(),
          "detect needs exactly one of --input and --input-dir");
  const DetectionConfig cfg = build_detection_config(c);
  return c.input.empty() ? run_detect_batch(c, cfg, log) : run_detect_single(c, cfg, log);
}

// synth ----------------------------------------------------------------------

int run_synth(const RunConfig& c, Log& log) {
  SynthParams p = c.synth;
  if (c.phase_deg) p.phase = deg_to_rad(*c.phase_deg);
  try {
    validate(p);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  GrayImage image = synth_mole(p);
  if (c.rotate_deg != 0.0) {
    const Point center{(image.width() - 1) / 2.0, (image.height() - 1) / 2.0};
    const RotationFrame frame =
        rotation_frame(image.width(), image.height(), center, deg_to_rad(c.rotate_deg));
    image = rotate_image(image, frame, border_median(image));
  }
  write_file_atomic(c.out, encode_pgm(image));
  log.info("wrote " + std::to_string(image.width()) + "x" + std::to_string(image.height()) +
           " fixture with " + std::to_string(p.n_streaks) + " streaks to " + c.out);
  return kExitOk;
}

// profile --------------------------------------------------------------------

int run_profile(const RunConfig& c, Log& log) {
  require(c.repetitions >= kMinRepetitions,
          "--repetitions must be at least " + std::to_string(kMinRepetitions));
  require(c.host_rate_gflops > 0.0, "--host-rate must be positive");
  const DetectionConfig cfg = build_detection_config(c);
  const GrayImage image = load_image(c.input);
  ProfileSet set;
  set.assumed_host_rate_gflops = c.host_rate_gflops;
  set.repetitions = c.repetitions;
  set.stages = profile_pipeline(image, cfg, c.host_rate_gflops, c.repetitions);
  if (c.canny) set.canny = profile_canny(image, c.host_rate_gflops, c.repetitions);
  std::vector<std::pair<std::string, std::string>> files = {{c.out, profiles_to_json(set)}};
  if (!c.pipeline_out.empty())
    files.emplace_back(c.pipeline_out, pipeline_to_json(to_pipeline(set.stages)));
  write_files_atomic(files);
  for (const StageProfile& s : set.stages)
    log.debug(s.name + ": " + fixed(s.wall_time_s * 1e3, 3) + " ms");
  if (set.canny) log.debug("canny: " + fixed(set.canny->wall_time_s * 1e3, 3) + " ms");
  log.info("profiled " + std::to_string(set.stages.size()) + " stages of " + c.input);
  return kExitOk;
}

// select ---------------------------------------------------------------------

SetFunction objective_named(const std::string& name) {
  if (name == "additive") return additive_objective();
  if (name == "cardinality") return cardinality_objective();
  return noisy_or_objective();
}

int run_select(const RunConfig& c, Log& log) {
  require(c.budget_s >= 0.0, "--budget must be non-negative");
  require(c.resolution_s > 0.0, "--resolution must be positive");
  require(c.mode != "dp" || c.objective == "additive",
          "--mode dp supports only the additive objective");
  const std::string text = read_input(c.components);
  const std::vector<Component> components =
      with_source(c.components, [&] { return parse_components_json(text); });
  EnsemblePlan plan;
  if (c.mode == "dp") {
    plan = select_additive(components, c.budget_s, c.resolution_s);
  } else {
    const SearchMode mode =
        c.mode == "exhaustive" ? SearchMode::kExhaustive : SearchMode::kBranchAndBound;
    plan = select_general(components, objective_named(c.objective), c.budget_s, mode,
                          c.resolution_s);
  }
  write_file_atomic(c.out, plan_to_json(plan));
  log.info("selected " + std::to_string(plan.selected.size()) + " of " +
           std::to_string(components.size()) + " components, objective " +
           fixed(plan.objective, 6) + ", " + fixed(plan.total_time_s, 6) + " s");
  return kExitOk;
}

// simulate -------------------------------------------------------------------

int run_simulate(const RunConfig& c, Log& log) {
  const std::string cluster_text = read_input(c.cluster);
  const std::string jobs_text = read_input(c.jobs);
  const ClusterConfig cluster =
      with_source(c.cluster, [&] { return parse_cluster_json(cluster_text); });
  for (const std::string& w : with_source(c.cluster, [&] { return validate(cluster); }))
    log.warn(w);
  const std::vector<Job> jobs = with_source(c.jobs, [&] { return parse_jobs_json(jobs_text); });
  SimulationOptions options;
  options.placement = c.placement == "exact" ? PlacementMode::kExact : PlacementMode::kGreedy;
  options.initial_temp_c = c.initial_temp_c;
  const ScheduleTrace trace = simulate(cluster, jobs, options);
  const std::string csv = export_trace_csv(trace);
  const std::string gantt = c.gantt.empty() ? std::string() : export_gantt_csv(trace);
  std::vector<std::pair<std::string, std::string>> files = {{c.trace, csv}};
  if (!c.gantt.empty()) files.emplace_back(c.gantt, gantt);
  write_files_atomic(files);
  log.info(std::to_string(jobs.size()) + " jobs on " + std::to_string(trace.devices.size()) +
           " devices, makespan " + format_us(trace.makespan_us) + " s");
  return kExitOk;
}

// cluster --------------------------------------------------------------------

int run_cluster(const RunConfig& c, Log& log) {
  require(c.machines >= 1 && c.cpus_per_machine >= 1,
          "--machines and --cpus must be at least 1");
  const ClusterConfig cluster = default_cluster(c.machines, c.cpus_per_machine);
  for (const std::string& w : validate(cluster)) log.warn(w);
  write_file_atomic(c.out, cluster_to_json(cluster));
  log.info(std::to_string(all_devices(cluster).size()) + " devices, " +
           fixed(aggregate_throughput(cluster), 3) + " TFLOP/s aggregate");
  return kExitOk;
}

// argument parsing -----------------------------------------------------------

void add_detection_flags(CLI::App* cmd, RunConfig& c) {
  DetectOverrides& o = c.overrides;
  cmd->add_option("--criteria", c.criteria, "Criteria and filter JSON")->group("Criteria");
  cmd->add_option("--min-count", o.min_count, "Qualifying segments needed")->group("Criteria");
  cmd->add_option("--len-min-frac", o.len_min_frac, "Minimum length, fraction of major axis")
      ->group("Criteria");
  cmd->add_option("--len-max-frac", o.len_max_frac, "Maximum length, fraction of minor axis")
      ->group("Criteria");
  cmd->add_option("--border-band-frac", o.border_band_frac,
                  "Border band width, fraction of minor axis")
      ->group("Criteria");
  cmd->add_option("--radial-dev-max-deg", o.radial_dev_max_deg,
                  "Maximum deviation from the centroid ray, degrees")
      ->group("Criteria");
  cmd->add_option("--darkness-factor", o.darkness_factor, "Segment/neighborhood darkness ratio")
      ->group("Criteria");
  cmd->add_option("--straightness-min", o.straightness_min, "Minimum chord/arc ratio")
      ->group("Criteria");
  cmd->add_option("--wavelength", o.wavelength, "Gabor wavelength, pixels")->group("Filter");
  cmd->add_option("--gabor-sigma", o.gabor_sigma, "Gabor envelope sigma, pixels")
      ->group("Filter");
  cmd->add_option("--gabor-gamma", o.gabor_gamma, "Gabor aspect ratio")->group("Filter");
  cmd->add_option("--log-sigma", o.log_sigma, "LoG sigma, pixels")->group("Filter");
  cmd->add_option("--threshold", o.threshold, "Ridge threshold: otsu or percentile")
      ->check(CLI::IsMember({"otsu", "percentile"}))
      ->group("Filter");
  cmd->add_option("--threshold-percentile", o.threshold_percentile,
                  "Percentile for --threshold percentile")
      ->group("Filter");
  cmd->add_flag("--bright-lesion", o.bright_lesion, "Lesion is brighter than the skin")
      ->group("Filter");
  cmd->add_option("--rim-margin", o.rim_margin, "Pixels trimmed from the lesion rim")
      ->group("Filter");
  cmd->add_option("--min-ridge-area", o.min_ridge_area, "Smallest ridge component kept")
      ->group("Filter");
  cmd->add_option("--spur-length", o.spur_length, "Longest skeleton spur removed")
      ->group("Filter");
}

}  // namespace

DetectionConfig build_detection_config(const RunConfig& c) {
  DetectionConfig cfg;
  if (!c.criteria.empty()) {
    const std::string text = read_input(c.criteria);
    cfg = with_source(c.criteria, [&] { return parse_criteria_json(text); });
  }
  const DetectOverrides& o = c.overrides;
  StreakCriteria& k = cfg.criteria;
  FilterParams& f = cfg.filter;
  if (o.min_count) k.min_count = *o.min_count;
  if (o.len_min_frac) k.len_min_frac = *o.len_min_frac;
  if (o.len_max_frac) k.len_max_frac = *o.len_max_frac;
  if (o.border_band_frac) k.border_band_frac = *o.border_band_frac;
  if (o.radial_dev_max_deg) k.radial_dev_max = deg_to_rad(*o.radial_dev_max_deg);
  if (o.darkness_factor) k.darkness_factor = *o.darkness_factor;
  if (o.straightness_min) k.straightness_min = *o.straightness_min;
  if (o.wavelength) f.wavelength = *o.wavelength;
  if (o.gabor_sigma) f.gabor_sigma = *o.gabor_sigma;
  if (o.gabor_gamma) f.gabor_gamma = *o.gabor_gamma;
  if (o.log_sigma) f.log_sigma = *o.log_sigma;
  if (o.threshold) {
    if (*o.threshold == "otsu") {
      f.threshold = RidgeThreshold::kOtsu;
    } else if (*o.threshold == "percentile") {
      f.threshold = RidgeThreshold::kPercentile;
    } else {
      throw UsageError("--threshold must be otsu or percentile");
    }
  }
  if (o.threshold_percentile) f.threshold_percentile = *o.threshold_percentile;
  if (o.bright_lesion) f.dark_lesion = false;
  if (o.rim_margin) f.rim_margin = *o.rim_margin;
  if (o.min_ridge_area) f.min_ridge_area = *o.min_ridge_area;
  if (o.spur_length) f.spur_length = *o.spur_length;
  try {
    validate(k);
    validate(f);
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string("detection option out of range: ") + e.what());
  }
  return cfg;
}

namespace {

std::string write_temp(const std::string& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp(path);
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    out.close();
    std::error_code ec;
    fs::remove(tmp, ec);
    throw UsageError("cannot write " + path);
  }
  return tmp.string();
}

}  // namespace

void write_file_atomic(const std::string& path, std::string_view bytes) {
  write_files_atomic({{path, std::string(bytes)}});
}

void write_files_atomic(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> temps;
  auto discard = [&] {
    std::error_code ignored;
    for (const std::string& t : temps) fs::remove(t, ignored);
  };
  try {
    for (const auto& [path, bytes] : files) temps.push_back(write_temp(path, bytes));
  } catch (...) {
    discard();
    throw;
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    fs::rename(temps[i], files[i].first, ec);
    if (ec) {
      temps.erase(temps.begin(), temps.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      discard();
      throw UsageError("cannot write " + files[i].first + ": " + ec.message());
    }
  }
}

int run_cli(std::span<const std::string> args, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Hybrid CPU/co-processor scheduling toolkit with a streak-detection workload",
               "hybridsim"};
  app.set_version_flag("--version", HYBRIDSIM_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  bool verbose = false;
  app.add_flag("-q,--quiet", quiet, "Only report errors");
  app.add_flag("-v,--verbose", verbose, "Also report per-stage details");

  CLI::App* detect = app.add_subcommand("detect", "Detect streaks in PGM images");
  detect->add_option("--input", c.input, "Input PGM");
  detect->add_option("--report", c.report, "Report JSON (with --input)");
  detect->add_option("--overlay", c.overlay, "Overlay PPM (with --input)");
  detect->add_option("--skeleton", c.skeleton, "Skeleton PGM (with --input)");
  detect->add_option("--input-dir", c.input_dir, "Directory of PGM images");
  detect->add_option("--report-dir", c.report_dir, "Per-image reports (with --input-dir)");
  detect->add_option("--overlay-dir", c.overlay_dir, "Per-image overlays (with --input-dir)");
  detect->add_option("--summary", c.summary,
                     "Summary CSV (with --input-dir; default REPORT_DIR/summary.csv)");
  detect->add_option("--threads", c.threads, "Worker threads for --input-dir (0: all cores)");
  add_detection_flags(detect, c);

  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic mole fixture");
  synth->add_option("--out", c.out, "Output PGM")->required();
  synth->add_option("--streaks", c.synth.n_streaks, "Number of radial streaks");
  synth->add_option("--seed", c.synth.seed, "Noise seed");
  synth->add_option("--width", c.synth.width, "Canvas width");
  synth->add_option("--height", c.synth.height, "Canvas height");
  synth->add_option("--semi-major", c.synth.semi_major, "Lesion semi-major axis, pixels");
  synth->add_option("--aspect", c.synth.aspect, "Semi-minor / semi-major");
  synth->add_option("--streak-len", c.synth.streak_len, "Streak length, pixels");
  synth->add_option("--streak-width", c.synth.streak_width, "Streak width, pixels");
  synth->add_option("--streak-margin", c.synth.streak_margin,
                    "Gap between streak end and lesion edge");
  synth->add_option("--phase-deg", c.phase_deg, "Angle of the first streak, degrees");
  synth->add_option("--lesion", c.synth.lesion_intensity, "Lesion intensity");
  synth->add_option("--streak", c.synth.streak_intensity, "Streak intensity");
  synth->add_option("--skin", c.synth.skin_intensity, "Skin intensity");
  synth->add_option("--noise", c.synth.noise_sigma, "Gaussian noise sigma");
  synth->add_option("--rotate-deg", c.rotate_deg, "Rotate the finished fixture, degrees");

  CLI::App* profile = app.add_subcommand("profile", "Profile the detection pipeline stages");
  profile->add_option("--input", c.input, "Input PGM")->required();
  profile->add_option("--out", c.out, "Profile JSON")->required();
  profile->add_option("--pipeline-out", c.pipeline_out, "Pipeline JSON for simulate");
  profile->add_option("--host-rate", c.host_rate_gflops, "Assumed host rate, GFLOP/s");
  profile->add_option("--repetitions", c.repetitions, "Timed runs per stage (median)");
  profile->add_flag("!--no-canny", c.canny, "Skip the standalone Canny profile");
  add_detection_flags(profile, c);

  CLI::App* select = app.add_subcommand("select", "Choose ensemble components under a budget");
  select->add_option("--components", c.components, "Components JSON")->required();
  select->add_option("--budget", c.budget_s, "Time budget, seconds")->required();
  select->add_option("--out", c.out, "Plan JSON")->required();
  select->add_option("--mode", c.mode, "dp, exhaustive or bnb")
      ->check(CLI::IsMember({"dp", "exhaustive", "bnb"}));
  select->add_option("--objective", c.objective, "additive, cardinality or noisy-or")
      ->check(CLI::IsMember({"additive", "cardinality", "noisy-or"}));
  select->add_option("--resolution", c.resolution_s, "Time discretization, seconds");

  CLI::App* sim = app.add_subcommand("simulate", "Simulate jobs on a cluster");
  sim->add_option("--cluster", c.cluster, "Cluster JSON")->required();
  sim->add_option("--jobs", c.jobs, "Jobs JSON")->required();
  sim->add_option("--trace", c.trace, "Trace CSV")->required();
  sim->add_option("--gantt", c.gantt, "Per-device utilization CSV");
  sim->add_option("--placement", c.placement, "greedy or exact")
      ->check(CLI::IsMember({"greedy", "exact"}));
  sim->add_option("--initial-temp", c.initial_temp_c, "Start every device at this temperature");

  CLI::App* cluster = app.add_subcommand("cluster", "Write a default cluster JSON");
  cluster->add_option("--out", c.out, "Cluster JSON")->required();
  cluster->add_option("--machines", c.machines, "Piled machines");
  cluster->add_option("--cpus", c.cpus_per_machine, "CPU sockets per machine");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, err, err) == 0 ? kExitOk : kExitUsage;
  }
  c.verbosity = quiet ? 0 : (verbose ? 2 : 1);
  Log log(err, c.verbosity);

  try {
    if (detect->parsed()) return run_detect(c, log);
    if (synth->parsed()) return run_synth(c, log);
    if (profile->parsed()) return run_profile(c, log);
    if (select->parsed()) return run_select(c, log);
    if (sim->parsed()) return run_simulate(c, log);
    if (cluster->parsed()) return run_cluster(c, log);
    throw UsageError("no subcommand");
  } catch (const std::exception& e) {
    log.error(e.what());
    return classify(e).code;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, err);
}

}  // namespace hybridsim::cli
