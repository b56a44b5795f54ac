#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "palimpsest/hole_mask.hpp"
#include "palimpsest/ink_removal.hpp"
#include "palimpsest/raster.hpp"

namespace palimpsest {

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Stroke {
  std::vector<Point> points;  // polyline vertices, at least one
  int width = 1;              // 1 or 2
};

struct NoDrawing {};
struct UniformPatch {
  int x = 0, y = 0, width = 0, height = 0;
  Rgb color;
};
struct LinearGradient {
  Rgb left;
  Rgb right;
};
using Drawing = std::variant<NoDrawing, UniformPatch, LinearGradient>;

/// Seeded placement of straight strokes. Each stroke keeps one pixel of
/// clearance from every other stroke (8-adjacency) and `margin` pixels from
/// the image border.
struct RandomStrokes {
  int count = 0;
  int min_length = 5;
  int max_length = 40;
  int width = 1;
  int margin = 2;
};

struct SynthSpec {
  int width = 64;
  int height = 64;
  BackgroundColor background{220, 200, 170};
  Drawing drawing = NoDrawing{};
  Rgb ink_color{20, 20, 20};
  Channel channel = Channel::Red;
  std::optional<int> threshold;
  std::vector<Stroke> strokes;
  std::optional<RandomStrokes> random_strokes;
  std::uint64_t seed = 0;
};

inline constexpr int kMinInkSeparation = 32;

struct Palimpsest {
  RasterImage clean;
  RasterImage overlaid;
  HoleMask truth_mask;
};

struct FidelityMetrics {
  double mae = 0.0;
  int max_error = 0;
  double residual_fraction = 0.0;
  double exact_fraction = 0.0;
  std::size_t truth_count = 0;
  std::size_t measured_count = 0;
  /// False when every truth cell is a residual hole (mae reported as 0).
  bool mae_defined = true;
};

/// Pixels covered by a straight segment, stepping one pixel at a time along
/// the major axis (no anti-aliasing).
std::vector<Point> rasterize_segment(Point from, Point to);

void validate(const SynthSpec& spec);
Palimpsest generate_palimpsest(const SynthSpec& spec);

FidelityMetrics fidelity_metrics(const RasterImage& restored, const RasterImage& clean,
                                 const HoleMask& truth_mask, const HoleMask& residual);

SynthSpec synth_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SynthSpec& spec);
nlohmann::ordered_json to_json(const FidelityMetrics& m);

}  // namespace palimpsest
