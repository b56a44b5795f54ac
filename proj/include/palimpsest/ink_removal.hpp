#pragma once

#include "palimpsest/hole_mask.hpp"
#include "palimpsest/raster.hpp"

namespace palimpsest {

using BackgroundColor = Rgb;

struct ThresholdedImage {
  RasterImage image;
  HoleMask mask;
};

/// Pixels whose `channel` tone is strictly below `threshold` become white
/// and are marked in the mask; everything else is copied through.
/// `threshold` must lie in [1, 255].
ThresholdedImage apply_threshold(const RasterImage& image, Channel channel, int threshold);

/// True iff the channel histogram of `masked_image` is empty below `threshold`.
bool verify_dark_peak_removed(const RasterImage& masked_image, Channel channel,
                              int threshold);

/// Per-channel median over non-hole pixels (lower middle on even counts).
BackgroundColor estimate_background(const RasterImage& image, const HoleMask& mask);

/// Paints every hole with `color`.
RasterImage fill_background(const RasterImage& image, const HoleMask& mask,
                            BackgroundColor color);

}  // namespace palimpsest
