// palimpsest: remove dark ink from a scanned drawing and inpaint the holes.
//
//   palimpsest restore --input scan.png --out out/ [options]
//   palimpsest synth   --spec spec.json --out dir/
//   palimpsest eval    --restored r.png --clean c.png --truth-mask t.png --residual-mask m.png
//
// Exit status: 0 success, 1 I/O or environment failure, 2 bad input or options.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

#include "palimpsest/error.hpp"
#include "palimpsest/pipeline.hpp"

namespace {

using namespace palimpsest;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

std::variant<AutoThreshold, int> parse_threshold(const std::string& text) {
  if (text == "auto") return AutoThreshold{};
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 1 || value > 255) {
    throw InvalidArgument("--threshold must be 'auto' or an integer in 1..255, got '" + text + "'");
  }
  return value;
}

FillMode parse_fill(const std::string& text) {
  if (text == "none") return NoFill{};
  if (text == "auto") return AutoFill{};
  return parse_hex_color(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Palimpsest restoration: threshold ink removal and neighbour inpainting"};
  app.require_subcommand(1);

  RestoreConfig config;
  std::string input, out_dir, channel = "red", threshold = "auto", fill = "none", gray = "blue";
  std::string report_path;
  int neighborhood = 4;
  long max_iters = -1;

  auto* restore = app.add_subcommand("restore", "Remove ink and reconstruct the drawing");
  restore->add_option("--input", input, "Input scan (PNG or PPM)")->required();
  restore->add_option("--out", out_dir, "Output directory")->required();
  restore->add_option("--channel", channel, "Channel used for thresholding")
      ->check(CLI::IsMember({"red", "green", "blue"}));
  restore->add_option("--threshold", threshold, "'auto' or a tone in 1..255");
  restore->add_option("--neighborhood", neighborhood, "4 or 8")->check(CLI::IsMember({4, 8}));
  restore->add_option("--min-known", config.min_known, "Known neighbours needed to fill a hole");
  restore->add_option("--max-iters", max_iters, "Inpainting step cap (default width*height)")
      ->check(CLI::NonNegativeNumber);
  restore->add_option("--fill", fill, "Residual hole fill: none, auto or #RRGGBB");
  restore->add_option("--gray", gray, "Gray output channel: none, red, green or blue")
      ->check(CLI::IsMember({"none", "red", "green", "blue"}));
  restore->add_flag("--emit-histograms", config.emit_histograms, "Write histogram CSVs");
  restore->add_flag("--emit-mask", config.emit_mask, "Write hole and residual masks");
  restore->add_option("--report", report_path, "Report JSON path (default <out>/report.json)");
  restore->add_option("--threads", config.threads, "Worker threads for inpainting")
      ->check(CLI::PositiveNumber);

  std::string spec_path, synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic palimpsest");
  synth->add_option("--spec", spec_path, "Spec JSON")->required();
  synth->add_option("--out", synth_out, "Output directory")->required();

  std::string restored, clean, truth, residual;
  auto* eval = app.add_subcommand("eval", "Score a restoration against ground truth");
  eval->add_option("--restored", restored)->required();
  eval->add_option("--clean", clean)->required();
  eval->add_option("--truth-mask", truth)->required();
  eval->add_option("--residual-mask", residual)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*restore) {
      config.input = input;
      config.out_dir = out_dir;
      config.channel = parse_channel(channel);
      config.threshold = parse_threshold(threshold);
      config.neighborhood = neighborhood == 8 ? Neighborhood::N8 : Neighborhood::N4;
      if (max_iters >= 0) config.max_iters = max_iters;
      config.fill = parse_fill(fill);
      config.gray_channel = gray == "none" ? std::nullopt : std::optional(parse_channel(gray));
      if (!report_path.empty()) config.report_path = report_path;
      const RestorationReport report = run_restore(config);
      std::cout << to_json(report).dump(2) << '\n';
    } else if (*synth) {
      nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
      for (const auto& p : run_synth(spec_path, synth_out)) manifest.push_back(p.string());
      std::cout << manifest.dump(2) << '\n';
    } else if (*eval) {
      std::cout << to_json(run_eval(restored, clean, truth, residual)).dump(2) << '\n';
    }
  } catch (const NotBimodal& e) {
    std::cerr << "error: " << e.what()
              << "\nthe histogram has no clear ink peak; set --threshold N explicitly\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << e.code() << "): " << e.what() << '\n';
    return e.is_io() ? kExitIo : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
