#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "palimpsest/histogram.hpp"
#include "palimpsest/image_io.hpp"
#include "palimpsest/ink_removal.hpp"
#include "palimpsest/inpaint.hpp"
#include "palimpsest/synth.hpp"

namespace palimpsest {

struct AutoThreshold {};
struct NoFill {};
struct AutoFill {};
using FillMode = std::variant<NoFill, AutoFill, BackgroundColor>;

struct RestoreConfig {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  Channel channel = Channel::Red;
  std::variant<AutoThreshold, int> threshold = AutoThreshold{};
  Neighborhood neighborhood = Neighborhood::N4;
  int min_known = 3;
  std::optional<long> max_iters;
  FillMode fill = NoFill{};
  std::optional<Channel> gray_channel = Channel::Blue;
  bool emit_histograms = false;
  bool emit_mask = false;
  std::optional<std::filesystem::path> report_path;
  int threads = 1;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct RestorationReport {
  ThresholdReport threshold;
  Channel channel = Channel::Red;
  std::size_t total = 0;
  std::size_t masked = 0;
  std::size_t filled = 0;
  std::size_t residual = 0;
  std::size_t background_filled = 0;
  std::optional<BackgroundColor> background;
  long iterations_run = 0;
  std::vector<std::size_t> fills_per_iteration;
  std::vector<std::filesystem::path> outputs;
  std::vector<StageTiming> timing;
};

/// load -> threshold -> remove ink -> inpaint -> optional background fill of
/// residual holes -> optional gray channel -> save artifacts and report.
RestorationReport run_restore(const RestoreConfig& config);

/// Writes clean/overlaid images and the truth mask; returns written paths.
std::vector<std::filesystem::path> run_synth(const std::filesystem::path& spec_path,
                                             const std::filesystem::path& out_dir);

FidelityMetrics run_eval(const std::filesystem::path& restored,
                         const std::filesystem::path& clean,
                         const std::filesystem::path& truth_mask,
                         const std::filesystem::path& residual_mask);

/// Field order is fixed. `with_timing = false` drops the timing block.
nlohmann::ordered_json to_json(const RestorationReport& report, bool with_timing = true);

}  // namespace palimpsest
