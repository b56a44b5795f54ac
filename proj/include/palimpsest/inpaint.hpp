#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "palimpsest/hole_mask.hpp"
#include "palimpsest/raster.hpp"

namespace palimpsest {

enum class Neighborhood { N4 = 4, N8 = 8 };

struct InpaintParams {
  Neighborhood neighborhood = Neighborhood::N4;
  /// A hole is filled once at least this many neighbours are known.
  int min_known = 3;
  /// Step cap; unset means width * height. Zero runs no step at all.
  std::optional<long> max_iters;
  /// Worker threads per step (row bands). Results do not depend on it.
  int threads = 1;

  void validate() const;
};

struct InpaintStep {
  RasterImage image;
  HoleMask mask;
  std::size_t filled = 0;
};

struct InpaintResult {
  RasterImage image;
  HoleMask residual_mask;
  long iterations_run = 0;
  std::vector<std::size_t> fills_per_iteration;
};

struct ResidualStats {
  std::size_t count = 0;
  double fraction = 0.0;
};

/// One synchronous pass. Every hole with at least `min_known` known
/// neighbours in the pre-step state takes the per-channel mean of all of
/// them (rounded half away from zero). Decisions read only the input, so
/// the result does not depend on visit order.
InpaintStep inpaint_step(const RasterImage& image, const HoleMask& mask,
                         const InpaintParams& params = {});

/// Repeats inpaint_step until a step fills nothing or max_iters is reached.
InpaintResult inpaint(const RasterImage& image, const HoleMask& mask,
                      const InpaintParams& params = {});

ResidualStats residual_stats(const InpaintResult& result);

}  // namespace palimpsest
