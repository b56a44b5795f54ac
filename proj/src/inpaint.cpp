#include "palimpsest/inpaint.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <thread>

#include "palimpsest/error.hpp"

namespace palimpsest {

namespace {

struct Offset {
  int dx;
  int dy;
};

constexpr std::array<Offset, 8> kOffsets{{
    {0, -1}, {-1, 0}, {1, 0}, {0, 1},      // edge neighbours
    {-1, -1}, {1, -1}, {-1, 1}, {1, 1},    // corners
}};

struct Fill {
  std::size_t index;
  Rgb color;
};

constexpr Tone rounded_mean(unsigned sum, unsigned n) {
  // Half away from zero; all operands are non-negative.
  return static_cast<Tone>((2 * sum + n) / (2 * n));
}

void compute_fills(const RasterImage& image, const HoleMask& mask,
                   std::span<const std::size_t> holes, const InpaintParams& params,
                   std::vector<Fill>& out) {
  const int n_offsets = static_cast<int>(params.neighborhood);
  const auto width = static_cast<std::size_t>(image.width());
  for (const std::size_t i : holes) {
    const int x = static_cast<int>(i % width);
    const int y = static_cast<int>(i / width);
    unsigned r = 0, g = 0, b = 0, known = 0;
    for (int k = 0; k < n_offsets; ++k) {
      const int nx = x + kOffsets[static_cast<std::size_t>(k)].dx;
      const int ny = y + kOffsets[static_cast<std::size_t>(k)].dy;
      if (!image.contains(nx, ny)) continue;
      const std::size_t j = image.index(nx, ny);
      if (mask.is_hole(j)) continue;
      r += image[j].r;
      g += image[j].g;
      b += image[j].b;
      ++known;
    }
    if (known >= static_cast<unsigned>(params.min_known)) {
      out.push_back({i, {rounded_mean(r, known), rounded_mean(g, known), rounded_mean(b, known)}});
    }
  }
}

// Fills in hole-list order. Chunks of the (row-major sorted) hole list are
// row bands, so workers only read the shared pre-step state.
std::vector<Fill> step_fills(const RasterImage& image, const HoleMask& mask,
                             std::span<const std::size_t> holes, const InpaintParams& params) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, params.threads)), holes.size());
  if (workers <= 1) {
    std::vector<Fill> fills;
    compute_fills(image, mask, holes, params, fills);
    return fills;
  }
  std::vector<std::vector<Fill>> parts(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (holes.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(holes.size(), w * chunk);
      const std::size_t end = std::min(holes.size(), begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        compute_fills(image, mask, holes.subspan(begin, end - begin), params, parts[w]);
      });
    }
  }
  std::vector<Fill> fills;
  for (auto& part : parts) fills.insert(fills.end(), part.begin(), part.end());
  return fills;
}

std::vector<std::size_t> hole_indices(const HoleMask& mask) {
  std::vector<std::size_t> holes;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.is_hole(i)) holes.push_back(i);
  }
  return holes;
}

void check_shapes(const RasterImage& image, const HoleMask& mask) {
  if (!mask.same_shape(image)) {
    throw DimensionMismatch("mask is " + std::to_string(mask.width()) + "x" +
                            std::to_string(mask.height()) + " but image is " +
                            std::to_string(image.width()) + "x" +
                            std::to_string(image.height()));
  }
}

}  // namespace

void InpaintParams::validate() const {
  const int size = static_cast<int>(neighborhood);
  if (min_known < 1 || min_known > size) {
    throw InvalidArgument("min_known must be in [1, " + std::to_string(size) + "], got " +
                          std::to_string(min_known));
  }
  if (max_iters && *max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
  if (threads < 1) throw InvalidArgument("threads must be >= 1");
}

InpaintStep inpaint_step(const RasterImage& image, const HoleMask& mask,
                         const InpaintParams& params) {
  check_shapes(image, mask);
  params.validate();
  const std::vector<std::size_t> holes = hole_indices(mask);
  const std::vector<Fill> fills = step_fills(image, mask, holes, params);

  InpaintStep out{image, mask, fills.size()};
  for (const Fill& f : fills) {
    out.image[f.index] = f.color;
    out.mask.set(f.index, false);
  }
  return out;
}

InpaintResult inpaint(const RasterImage& image, const HoleMask& mask,
                      const InpaintParams& params) {
  check_shapes(image, mask);
  params.validate();
  const long max_iters =
      params.max_iters.value_or(static_cast<long>(image.width()) * image.height());

  InpaintResult result{image, mask, 0, {}};
  std::vector<std::size_t> holes = hole_indices(mask);
  while (result.iterations_run < max_iters) {
    const std::vector<Fill> fills = step_fills(result.image, result.residual_mask, holes, params);
    ++result.iterations_run;
    result.fills_per_iteration.push_back(fills.size());
    if (fills.empty()) break;
    for (const Fill& f : fills) {
      result.image[f.index] = f.color;
      result.residual_mask.set(f.index, false);
    }
    std::erase_if(holes, [&](std::size_t i) { return !result.residual_mask.is_hole(i); });
  }
  return result;
}

ResidualStats residual_stats(const InpaintResult& result) {
  const std::size_t count = result.residual_mask.count();
  const std::size_t total = result.residual_mask.size();
  return {count, total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total)};
}

}  // namespace palimpsest
