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

#ifndef HYBRIDSIM_TOOLS_CLI_HPP_
#define HYBRIDSIM_TOOLS_CLI_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridsim/ensemble_select.hpp"
#include "hybridsim/streaks.hpp"
#include "hybridsim/workload_bridge.hpp"

namespace hybridsim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,  // bad arguments, missing or unreadable input, unwritable output
  kExitParse = 3,  // malformed input file or invalid configuration
  kExitNoLesion = 4,
};

// Argument or file-system problem on the caller's side (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { kNone, kDetect, kSynth, kProfile, kSelect, kSimulate, kCluster };

// Detection flags. Unset fields keep the value from --criteria, which in turn
// keeps the built-in default for keys it does not mention.
struct DetectOverrides {
  std::optional<int> min_count;
  std::optional<double> len_min_frac;
  std::optional<double> len_max_frac;
  std::optional<double> border_band_frac;
  std::optional<double> radial_dev_max_deg;
  std::optional<double> darkness_factor;
  std::optional<double> straightness_min;
  std::optional<double> wavelength;
  std::optional<double> gabor_sigma;
  std::optional<double> gabor_gamma;
  std::optional<double> log_sigma;
  std::optional<std::string> threshold;  // "otsu" or "percentile"
  std::optional<double> threshold_percentile;
  bool bright_lesion = false;
  std::optional<int> rim_margin;
  std::optional<std::size_t> min_ridge_area;
  std::optional<double> spur_length;
};

// Parsed command line. Empty paths mean "not given".
struct RunConfig {
  Subcommand subcommand = Subcommand::kNone;
  int verbosity = 1;  // 0 quiet, 1 normal, 2 verbose

  // detect, profile
  std::string input;
  std::string criteria;
  DetectOverrides overrides;
  // detect
  std::string input_dir;
  std::string report;
  std::string report_dir;
  std::string overlay;
  std::string overlay_dir;
  std::string skeleton;
  std::string summary;
  unsigned threads = 0;  // 0: one per hardware thread

  // synth
  std::string out;
  SynthParams synth;
  std::optional<double> phase_deg;  // overrides synth.phase
  double rotate_deg = 0.0;

  // profile
  double host_rate_gflops = kDefaultHostRateGflops;
  int repetitions = 5;
  bool canny = true;
  std::string pipeline_out;

  // select
  std::string components;
  double budget_s = 0.0;
  std::string mode = "dp";  // dp | exhaustive | bnb
  std::string objective = "additive";  // additive | cardinality | noisy-or
  double resolution_s = kDefaultTimeResolutionS;

  // simulate
  std::string cluster;
  std::string jobs;
  std::string trace;
  std::string gantt;
  std::string placement = "greedy";  // greedy | exact
  std::optional<double> initial_temp_c;

  // cluster
  int machines = 1;
  int cpus_per_machine = 2;
};

// Criteria file (if any) with flag overrides applied on top. Throws
// UsageError for out-of-range flag values and ConfigError or ParseError for a
// bad criteria file.
DetectionConfig build_detection_config(const RunConfig& config);

// Writes through a temporary file in the destination directory and renames
// it into place, so readers never observe a partial file.
void write_file_atomic(const std::string& path, std::string_view bytes);
// All-or-nothing version for commands with several outputs: every file is
// staged before any is renamed, and a staging failure removes the rest.
void write_files_atomic(const std::vector<std::pair<std::string, std::string>>& files);

// `args` excludes the program name. Human-readable output goes to `err`;
// machine output only to the files named on the command line.
int run_cli(std::span<const std::string> args, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& err);

}  // namespace hybridsim::cli

#endif  // HYBRIDSIM_TOOLS_CLI_HPP_
