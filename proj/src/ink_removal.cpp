#include "palimpsest/ink_removal.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "palimpsest/error.hpp"
#include "palimpsest/histogram.hpp"

namespace palimpsest {

ThresholdedImage apply_threshold(const RasterImage& image, Channel channel, int threshold) {
  if (threshold < 1 || threshold > 255) {
    throw InvalidArgument("threshold must be in [1, 255], got " + std::to_string(threshold));
  }
  ThresholdedImage out{image, HoleMask(image.width(), image.height())};
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (channel_of(image[i], channel) < threshold) {
      out.image[i] = kWhite;
      out.mask.set(i, true);
    }
  }
  return out;
}

bool verify_dark_peak_removed(const RasterImage& masked_image, Channel channel, int threshold) {
  const ChannelHistogram hist = channel_histogram(masked_image, channel);
  const int limit = std::clamp(threshold, 0, 256);
  return std::all_of(hist.bins.begin(), hist.bins.begin() + limit,
                     [](std::uint64_t n) { return n == 0; });
}

BackgroundColor estimate_background(const RasterImage& image, const HoleMask& mask) {
  if (!mask.same_shape(image)) throw DimensionMismatch("mask and image differ in size");
  // Counting sort per channel; the median is read off the cumulative counts.
  std::array<std::array<std::size_t, 256>, 3> counts{};
  std::size_t known = 0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (mask.is_hole(i)) continue;
    ++counts[0][image[i].r];
    ++counts[1][image[i].g];
    ++counts[2][image[i].b];
    ++known;
  }
  if (known == 0) throw AllPixelsMasked();

  const std::size_t rank = (known - 1) / 2;  // lower middle, zero-based
  auto median = [rank](const std::array<std::size_t, 256>& c) {
    std::size_t seen = 0;
    for (int t = 0; t < 256; ++t) {
      seen += c[static_cast<std::size_t>(t)];
      if (seen > rank) return static_cast<Tone>(t);
    }
    return Tone{255};
  };
  return {median(counts[0]), median(counts[1]), median(counts[2])};
}

RasterImage fill_background(const RasterImage& image, const HoleMask& mask,
                            BackgroundColor color) {
  if (!mask.same_shape(image)) throw DimensionMismatch("mask and image differ in size");
  RasterImage out = image;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (mask.is_hole(i)) out[i] = color;
  }
  return out;
}

}  // namespace palimpsest
