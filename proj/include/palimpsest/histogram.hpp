#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

#include "palimpsest/raster.hpp"

namespace palimpsest {

struct ChannelHistogram {
  std::array<std::uint64_t, 256> bins{};

  std::uint64_t total() const noexcept;
  friend bool operator==(const ChannelHistogram&, const ChannelHistogram&) = default;
};

using SmoothedHistogram = std::array<double, 256>;

enum class ThresholdMode { Auto, Manual };

struct ThresholdReport {
  int dark_peak = 0;
  int bright_peak = 0;
  int valley = 0;
  int threshold = 0;
  ThresholdMode mode = ThresholdMode::Auto;

  friend bool operator==(const ThresholdReport&, const ThresholdReport&) = default;
};

inline constexpr int kAutoThresholdWindow = 5;
/// Minimum share of all pixels a dark peak must hold to count as ink.
inline constexpr double kDarkPeakFloor = 0.001;

ChannelHistogram channel_histogram(const RasterImage& image, Channel channel);

/// Centered moving average; the window shrinks at the ends of the tone range.
SmoothedHistogram smooth_histogram(const ChannelHistogram& hist, int window);

/// Places the threshold in the valley between the small dark (ink) peak and
/// the large bright (paper/drawing) peak.
///
/// Peaks are plateau-aware local maxima of the window-5 smoothed histogram:
/// the bright peak is the highest one in [128, 255], the dark peak the
/// highest one in [0, 127]. A drawing tone between ink and paper therefore
/// never poses as the ink peak. Each peak is then moved to the tallest raw
/// bin inside its smoothing window. The valley is the lowest-count raw bin
/// strictly between them, ties going to the lowest tone. Throws NotBimodal
/// when no dark peak holds at least 0.1% of the pixels.
ThresholdReport auto_threshold(const ChannelHistogram& hist);

/// A manual report echoing `threshold` (must be in [1, 255]).
ThresholdReport manual_threshold(int threshold);

/// "bin,red,green,blue" header then 256 integer rows.
void write_histogram_csv(std::ostream& out, const RasterImage& image);

}  // namespace palimpsest
