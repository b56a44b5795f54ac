#include "palimpsest/synth.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <string>

#include "palimpsest/error.hpp"

namespace palimpsest {

namespace {

// num / den rounded half away from zero, den > 0.
int div_round(long num, long den) {
  return static_cast<int>(num >= 0 ? (2 * num + den) / (2 * den) : -((-2 * num + den) / (2 * den)));
}

Tone lerp_tone(Tone a, Tone b, int x, int span) {
  if (span <= 0) return a;
  return static_cast<Tone>(a + div_round(static_cast<long>(b - a) * x, span));
}

std::vector<Point> rasterize_stroke(const Stroke& stroke) {
  std::vector<Point> pixels;
  auto add_segment = [&](Point a, Point b) {
    const bool x_major = std::abs(b.x - a.x) >= std::abs(b.y - a.y);
    for (const Point& p : rasterize_segment(a, b)) {
      pixels.push_back(p);
      if (stroke.width == 2) pixels.push_back(x_major ? Point{p.x, p.y + 1} : Point{p.x + 1, p.y});
    }
  };
  if (stroke.points.size() == 1) add_segment(stroke.points[0], stroke.points[0]);
  for (std::size_t i = 1; i < stroke.points.size(); ++i) {
    add_segment(stroke.points[i - 1], stroke.points[i]);
  }
  std::sort(pixels.begin(), pixels.end(),
            [](const Point& a, const Point& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());
  return pixels;
}

std::vector<Tone> drawing_tones(const SynthSpec& spec) {
  std::vector<Tone> tones{channel_of(spec.background, spec.channel)};
  if (const auto* patch = std::get_if<UniformPatch>(&spec.drawing)) {
    tones.push_back(channel_of(patch->color, spec.channel));
  } else if (const auto* grad = std::get_if<LinearGradient>(&spec.drawing)) {
    tones.push_back(channel_of(grad->left, spec.channel));
    tones.push_back(channel_of(grad->right, spec.channel));
  }
  return tones;
}

void validate_stroke(const Stroke& stroke, const SynthSpec& spec, std::size_t n) {
  const std::string which = "stroke " + std::to_string(n);
  if (stroke.points.empty()) throw InvalidSpec(which + " has no points");
  if (stroke.width != 1 && stroke.width != 2) throw InvalidSpec(which + " width must be 1 or 2");
  for (const Point& p : rasterize_stroke(stroke)) {
    if (p.x < 0 || p.y < 0 || p.x >= spec.width || p.y >= spec.height) {
      throw InvalidSpec(which + " leaves the image at (" + std::to_string(p.x) + ", " +
                        std::to_string(p.y) + ")");
    }
  }
}

// Occupancy grid for random placement; a candidate stroke is rejected when
// any of its pixels touches (8-adjacency) an earlier stroke.
class StrokeField {
 public:
  StrokeField(int width, int height) : occupied_(width, height) {}

  bool is_clear(const std::vector<Point>& pixels) const {
    for (const Point& p : pixels) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (occupied_.contains(p.x + dx, p.y + dy) && occupied_.is_hole(p.x + dx, p.y + dy)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  void mark(const std::vector<Point>& pixels) {
    for (const Point& p : pixels) occupied_.set(p.x, p.y, true);
  }

 private:
  HoleMask occupied_;
};

std::vector<Stroke> place_random_strokes(const SynthSpec& spec, StrokeField& field) {
  const RandomStrokes& rs = *spec.random_strokes;
  std::mt19937_64 rng(spec.seed);
  // Modulo mapping keeps sequences identical across standard libraries.
  auto uniform = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const int lo_x = rs.margin;
  const int hi_x = spec.width - 1 - rs.margin - (rs.width == 2 ? 1 : 0);
  const int lo_y = rs.margin;
  const int hi_y = spec.height - 1 - rs.margin - (rs.width == 2 ? 1 : 0);
  if (rs.count > 0 && (hi_x < lo_x || hi_y < lo_y)) {
    throw InvalidSpec("image too small for the random stroke margin");
  }

  constexpr int kAttemptsPerStroke = 2000;
  std::vector<Stroke> placed;
  for (int n = 0; n < rs.count; ++n) {
    bool done = false;
    for (int attempt = 0; attempt < kAttemptsPerStroke && !done; ++attempt) {
      const int length = uniform(rs.min_length, rs.max_length);
      const int major = (length - 1) * (uniform(0, 1) == 0 ? 1 : -1);
      const int minor = uniform(-(length - 1), length - 1);
      const bool x_major = uniform(0, 1) == 0;
      const Point start{uniform(lo_x, hi_x), uniform(lo_y, hi_y)};
      const Point end = x_major ? Point{start.x + major, start.y + minor}
                                : Point{start.x + minor, start.y + major};
      if (end.x < lo_x || end.x > hi_x || end.y < lo_y || end.y > hi_y) continue;
      Stroke stroke{{start, end}, rs.width};
      const std::vector<Point> pixels = rasterize_stroke(stroke);
      if (!field.is_clear(pixels)) continue;
      field.mark(pixels);
      placed.push_back(std::move(stroke));
      done = true;
    }
    if (!done) {
      throw InvalidSpec("could not place random stroke " + std::to_string(n) + " of " +
                        std::to_string(rs.count) + " without touching another stroke");
    }
  }
  return placed;
}

Rgb color_from_json(const nlohmann::json& j, const char* field) {
  if (j.is_string()) return parse_hex_color(j.get<std::string>());
  if (j.is_array() && j.size() == 3) {
    Rgb c;
    int v[3];
    for (int k = 0; k < 3; ++k) {
      v[k] = j[static_cast<std::size_t>(k)].get<int>();
      if (v[k] < 0 || v[k] > 255) throw InvalidSpec(std::string(field) + " tone out of range");
    }
    c.r = static_cast<Tone>(v[0]);
    c.g = static_cast<Tone>(v[1]);
    c.b = static_cast<Tone>(v[2]);
    return c;
  }
  throw InvalidSpec(std::string(field) + " must be [r, g, b] or \"#RRGGBB\"");
}

nlohmann::json color_to_json(const Rgb& c) { return {c.r, c.g, c.b}; }

}  // namespace

std::vector<Point> rasterize_segment(Point from, Point to) {
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  const int steps = std::max(std::abs(dx), std::abs(dy));
  if (steps == 0) return {from};
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    out.push_back({from.x + div_round(static_cast<long>(i) * dx, steps),
                   from.y + div_round(static_cast<long>(i) * dy, steps)});
  }
  return out;
}

void validate(const SynthSpec& spec) {
  if (spec.width < 1 || spec.height < 1) throw InvalidSpec("width and height must be positive");
  const int ink = channel_of(spec.ink_color, spec.channel);
  const std::vector<Tone> tones = drawing_tones(spec);
  const int darkest = *std::min_element(tones.begin(), tones.end());
  if (darkest - ink < kMinInkSeparation) {
    throw InvalidSpec("ink " + std::string(to_string(spec.channel)) + " tone " +
                      std::to_string(ink) + " must sit at least " +
                      std::to_string(kMinInkSeparation) + " below every drawing tone (darkest " +
                      std::to_string(darkest) + ")");
  }
  if (spec.threshold && (*spec.threshold <= ink || *spec.threshold > darkest)) {
    throw InvalidSpec("planned threshold must satisfy ink < threshold <= darkest drawing tone");
  }
  if (const auto* patch = std::get_if<UniformPatch>(&spec.drawing)) {
    if (patch->width < 1 || patch->height < 1 || patch->x < 0 || patch->y < 0 ||
        patch->x + patch->width > spec.width || patch->y + patch->height > spec.height) {
      throw InvalidSpec("drawing patch lies outside the image");
    }
  }
  for (std::size_t n = 0; n < spec.strokes.size(); ++n) validate_stroke(spec.strokes[n], spec, n);
  if (spec.random_strokes) {
    const RandomStrokes& rs = *spec.random_strokes;
    if (rs.count < 0) throw InvalidSpec("random stroke count must be >= 0");
    if (rs.min_length < 1 || rs.max_length < rs.min_length) {
      throw InvalidSpec("random stroke lengths must satisfy 1 <= min_length <= max_length");
    }
    if (rs.width != 1 && rs.width != 2) throw InvalidSpec("random stroke width must be 1 or 2");
    if (rs.margin < 0) throw InvalidSpec("random stroke margin must be >= 0");
  }
}

Palimpsest generate_palimpsest(const SynthSpec& spec) {
  validate(spec);
  RasterImage clean(spec.width, spec.height, spec.background);
  if (const auto* patch = std::get_if<UniformPatch>(&spec.drawing)) {
    for (int y = patch->y; y < patch->y + patch->height; ++y) {
      for (int x = patch->x; x < patch->x + patch->width; ++x) clean.at(x, y) = patch->color;
    }
  } else if (const auto* grad = std::get_if<LinearGradient>(&spec.drawing)) {
    const int span = spec.width - 1;
    for (int x = 0; x < spec.width; ++x) {
      const Rgb c{lerp_tone(grad->left.r, grad->right.r, x, span),
                  lerp_tone(grad->left.g, grad->right.g, x, span),
                  lerp_tone(grad->left.b, grad->right.b, x, span)};
      for (int y = 0; y < spec.height; ++y) clean.at(x, y) = c;
    }
  }

  StrokeField field(spec.width, spec.height);
  std::vector<Stroke> strokes = spec.strokes;
  for (const Stroke& s : strokes) field.mark(rasterize_stroke(s));
  if (spec.random_strokes) {
    std::vector<Stroke> random = place_random_strokes(spec, field);
    strokes.insert(strokes.end(), random.begin(), random.end());
  }

  Palimpsest out{clean, clean, HoleMask(spec.width, spec.height)};
  for (const Stroke& s : strokes) {
    for (const Point& p : rasterize_stroke(s)) {
      out.overlaid.at(p.x, p.y) = spec.ink_color;
      out.truth_mask.set(p.x, p.y, true);
    }
  }
  return out;
}

FidelityMetrics fidelity_metrics(const RasterImage& restored, const RasterImage& clean,
                                 const HoleMask& truth_mask, const HoleMask& residual) {
  if (!restored.same_shape(clean) || !truth_mask.same_shape(clean) ||
      !residual.same_shape(clean)) {
    throw DimensionMismatch("restored, clean and masks must share dimensions");
  }
  FidelityMetrics m;
  std::size_t residual_count = 0;
  std::size_t exact = 0;
  std::uint64_t abs_sum = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (!truth_mask.is_hole(i)) continue;
    ++m.truth_count;
    if (residual.is_hole(i)) {
      ++residual_count;
      continue;
    }
    ++m.measured_count;
    const int dr = std::abs(restored[i].r - clean[i].r);
    const int dg = std::abs(restored[i].g - clean[i].g);
    const int db = std::abs(restored[i].b - clean[i].b);
    abs_sum += static_cast<std::uint64_t>(dr + dg + db);
    m.max_error = std::max({m.max_error, dr, dg, db});
    if (dr == 0 && dg == 0 && db == 0) ++exact;
  }
  if (m.measured_count > 0) {
    m.mae = static_cast<double>(abs_sum) / (3.0 * static_cast<double>(m.measured_count));
  }
  m.mae_defined = m.measured_count > 0 || m.truth_count == 0;
  if (m.truth_count > 0) {
    const auto truth = static_cast<double>(m.truth_count);
    m.residual_fraction = static_cast<double>(residual_count) / truth;
    m.exact_fraction = static_cast<double>(exact) / truth;
  } else {
    m.exact_fraction = 1.0;
  }
  return m;
}

SynthSpec synth_spec_from_json(const nlohmann::json& j) {
  try {
    SynthSpec spec;
    spec.width = j.at("width").get<int>();
    spec.height = j.at("height").get<int>();
    if (j.contains("background")) spec.background = color_from_json(j["background"], "background");
    if (j.contains("ink_color")) spec.ink_color = color_from_json(j["ink_color"], "ink_color");
    if (j.contains("channel")) spec.channel = parse_channel(j["channel"].get<std::string>());
    if (j.contains("threshold") && !j["threshold"].is_null()) {
      spec.threshold = j["threshold"].get<int>();
    }
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();

    if (j.contains("drawing") && !j["drawing"].is_null()) {
      const auto& d = j["drawing"];
      const std::string type = d.at("type").get<std::string>();
      if (type == "none") {
        spec.drawing = NoDrawing{};
      } else if (type == "patch") {
        spec.drawing = UniformPatch{d.at("x").get<int>(), d.at("y").get<int>(),
                                    d.at("width").get<int>(), d.at("height").get<int>(),
                                    color_from_json(d.at("color"), "drawing.color")};
      } else if (type == "gradient") {
        spec.drawing = LinearGradient{color_from_json(d.at("left"), "drawing.left"),
                                      color_from_json(d.at("right"), "drawing.right")};
      } else {
        throw InvalidSpec("unknown drawing type '" + type + "'");
      }
    }

    if (j.contains("strokes")) {
      for (const auto& s : j["strokes"]) {
        Stroke stroke;
        stroke.width = s.value("width", 1);
        for (const auto& p : s.at("points")) {
          if (!p.is_array() || p.size() != 2) throw InvalidSpec("stroke points must be [x, y]");
          stroke.points.push_back({p[0].get<int>(), p[1].get<int>()});
        }
        spec.strokes.push_back(std::move(stroke));
      }
    }

    if (j.contains("random_strokes") && !j["random_strokes"].is_null()) {
      const auto& r = j["random_strokes"];
      RandomStrokes rs;
      rs.count = r.value("count", rs.count);
      rs.min_length = r.value("min_length", rs.min_length);
      rs.max_length = r.value("max_length", rs.max_length);
      rs.width = r.value("width", rs.width);
      rs.margin = r.value("margin", rs.margin);
      spec.random_strokes = rs;
    }
    validate(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec(std::string("malformed synth spec: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidSpec(e.what());
  }
}

nlohmann::json to_json(const SynthSpec& spec) {
  nlohmann::json j;
  j["width"] = spec.width;
  j["height"] = spec.height;
  j["background"] = color_to_json(spec.background);
  j["ink_color"] = color_to_json(spec.ink_color);
  j["channel"] = std::string(to_string(spec.channel));
  if (spec.threshold) j["threshold"] = *spec.threshold;
  j["seed"] = spec.seed;
  if (const auto* patch = std::get_if<UniformPatch>(&spec.drawing)) {
    j["drawing"] = {{"type", "patch"},   {"x", patch->x},
                    {"y", patch->y},     {"width", patch->width},
                    {"height", patch->height}, {"color", color_to_json(patch->color)}};
  } else if (const auto* grad = std::get_if<LinearGradient>(&spec.drawing)) {
    j["drawing"] = {{"type", "gradient"},
                    {"left", color_to_json(grad->left)},
                    {"right", color_to_json(grad->right)}};
  } else {
    j["drawing"] = {{"type", "none"}};
  }
  j["strokes"] = nlohmann::json::array();
  for (const Stroke& s : spec.strokes) {
    nlohmann::json points = nlohmann::json::array();
    for (const Point& p : s.points) points.push_back({p.x, p.y});
    j["strokes"].push_back({{"points", points}, {"width", s.width}});
  }
  if (spec.random_strokes) {
    const RandomStrokes& rs = *spec.random_strokes;
    j["random_strokes"] = {{"count", rs.count},   {"min_length", rs.min_length},
                           {"max_length", rs.max_length}, {"width", rs.width},
                           {"margin", rs.margin}};
  }
  return j;
}

nlohmann::ordered_json to_json(const FidelityMetrics& m) {
  nlohmann::ordered_json j;
  j["mae"] = m.mae;
  j["max_error"] = m.max_error;
  j["residual_fraction"] = m.residual_fraction;
  j["exact_fraction"] = m.exact_fraction;
  j["truth_count"] = m.truth_count;
  j["measured_count"] = m.measured_count;
  j["mae_defined"] = m.mae_defined;
  return j;
}

}  // namespace palimpsest
