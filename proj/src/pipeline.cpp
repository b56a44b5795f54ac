#include "palimpsest/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include "palimpsest/error.hpp"

namespace palimpsest {

namespace fs = std::filesystem;

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

  void lap(std::string stage) {
    const auto now = std::chrono::steady_clock::now();
    sink_.push_back({std::move(stage),
                     std::chrono::duration<double, std::milli>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_histograms(const fs::path& path, const RasterImage& image) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_histogram_csv(out, image);
  if (!out) throw IoError("write failed for " + path.string());
}

std::string image_name(const std::string& stem, ImageFormat format) {
  return stem + (format == ImageFormat::Ppm ? ".ppm" : ".png");
}

nlohmann::ordered_json color_json(const Rgb& c) { return {c.r, c.g, c.b}; }

}  // namespace

RestorationReport run_restore(const RestoreConfig& config) {
  RestorationReport report;
  StageClock clock(report.timing);

  const ImageFormat format = format_from_extension(config.input);
  const RasterImage original = load_image(config.input);
  ensure_directory(config.out_dir);
  report.channel = config.channel;
  report.total = original.size();
  clock.lap("load");

  const ChannelHistogram hist = channel_histogram(original, config.channel);
  if (const int* manual = std::get_if<int>(&config.threshold)) {
    report.threshold = manual_threshold(*manual);
  } else {
    report.threshold = auto_threshold(hist);
  }
  clock.lap("threshold");

  const ThresholdedImage removed =
      apply_threshold(original, config.channel, report.threshold.threshold);
  if (!verify_dark_peak_removed(removed.image, config.channel, report.threshold.threshold)) {
    throw std::logic_error("dark tones survived thresholding");
  }
  report.masked = removed.mask.count();
  clock.lap("remove_ink");

  InpaintParams params;
  params.neighborhood = config.neighborhood;
  params.min_known = config.min_known;
  params.max_iters = config.max_iters;
  params.threads = config.threads;
  const InpaintResult inpainted = inpaint(removed.image, removed.mask, params);
  report.iterations_run = inpainted.iterations_run;
  report.fills_per_iteration = inpainted.fills_per_iteration;
  report.residual = inpainted.residual_mask.count();
  report.filled = report.masked - report.residual;
  clock.lap("inpaint");

  RasterImage restored = inpainted.image;
  if (!std::holds_alternative<NoFill>(config.fill) && report.residual > 0) {
    const BackgroundColor color = std::holds_alternative<AutoFill>(config.fill)
                                      ? estimate_background(original, removed.mask)
                                      : std::get<BackgroundColor>(config.fill);
    restored = fill_background(restored, inpainted.residual_mask, color);
    report.background = color;
    report.background_filled = report.residual;
  } else if (const auto* color = std::get_if<BackgroundColor>(&config.fill)) {
    report.background = *color;
  }
  clock.lap("fill");

  auto emit = [&](const fs::path& path) { report.outputs.push_back(path); };
  const fs::path& out = config.out_dir;

  save_image(removed.image, out / image_name("thresholded", format), format);
  emit(out / image_name("thresholded", format));
  save_image(restored, out / image_name("restored", format), format);
  emit(out / image_name("restored", format));
  if (config.gray_channel) {
    const fs::path path = out / image_name("gray", format);
    save_image(extract_channel_gray(restored, *config.gray_channel), path, format);
    emit(path);
  }
  if (config.emit_mask) {
    save_image(removed.mask.to_gray(), out / "mask.png", ImageFormat::Png);
    emit(out / "mask.png");
    save_image(inpainted.residual_mask.to_gray(), out / "residual_mask.png", ImageFormat::Png);
    emit(out / "residual_mask.png");
  }
  if (config.emit_histograms) {
    write_histograms(out / "histogram_before.csv", original);
    emit(out / "histogram_before.csv");
    write_histograms(out / "histogram_after.csv", removed.image);
    emit(out / "histogram_after.csv");
  }
  clock.lap("save");

  const fs::path report_path = config.report_path.value_or(out / "report.json");
  report.outputs.push_back(report_path);
  write_text(report_path, to_json(report).dump(2) + "\n");
  return report;
}

std::vector<fs::path> run_synth(const fs::path& spec_path, const fs::path& out_dir) {
  std::error_code ec;
  if (!fs::is_regular_file(spec_path, ec)) throw FileNotFound(spec_path.string());
  std::ifstream in(spec_path);
  if (!in) throw IoError("cannot open " + spec_path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec(std::string("spec is not valid JSON: ") + e.what());
  }
  const Palimpsest p = generate_palimpsest(synth_spec_from_json(j));

  ensure_directory(out_dir);
  const std::vector<fs::path> paths{out_dir / "clean.png", out_dir / "overlaid.png",
                                    out_dir / "truth_mask.png"};
  save_image(p.clean, paths[0], ImageFormat::Png);
  save_image(p.overlaid, paths[1], ImageFormat::Png);
  save_image(p.truth_mask.to_gray(), paths[2], ImageFormat::Png);
  return paths;
}

FidelityMetrics run_eval(const fs::path& restored, const fs::path& clean,
                         const fs::path& truth_mask, const fs::path& residual_mask) {
  return fidelity_metrics(load_image(restored), load_image(clean),
                          HoleMask::from_image(load_image(truth_mask)),
                          HoleMask::from_image(load_image(residual_mask)));
}

nlohmann::ordered_json to_json(const RestorationReport& r, bool with_timing) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json t;
  t["mode"] = r.threshold.mode == ThresholdMode::Auto ? "auto" : "manual";
  t["channel"] = std::string(to_string(r.channel));
  t["threshold"] = r.threshold.threshold;
  if (r.threshold.mode == ThresholdMode::Auto) {
    t["dark_peak"] = r.threshold.dark_peak;
    t["bright_peak"] = r.threshold.bright_peak;
    t["valley"] = r.threshold.valley;
  }
  j["threshold_report"] = t;

  nlohmann::ordered_json pixels;
  pixels["total"] = r.total;
  pixels["masked"] = r.masked;
  pixels["filled"] = r.filled;
  pixels["residual"] = r.residual;
  pixels["background_filled"] = r.background_filled;
  j["pixels"] = pixels;

  j["background"] = r.background ? nlohmann::ordered_json(color_json(*r.background))
                                 : nlohmann::ordered_json(nullptr);
  j["iterations_run"] = r.iterations_run;
  j["fills_per_iteration"] = r.fills_per_iteration;

  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (const auto& p : r.outputs) outputs.push_back(p.string());
  j["outputs"] = outputs;

  if (with_timing) {
    nlohmann::ordered_json timing;
    for (const auto& s : r.timing) timing[s.stage] = s.milliseconds;
    j["timing_ms"] = timing;
  }
  return j;
}

}  // namespace palimpsest
