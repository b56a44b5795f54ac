#include "palimpsest/histogram.hpp"

#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "palimpsest/error.hpp"

namespace palimpsest {

namespace {

constexpr int kDarkHalfEnd = 127;

struct Peak {
  int tone = 0;
  double height = 0.0;
};

// Maximal runs of equal smoothed values that sit strictly above both
// neighbours; the ends of the tone range count as lower. A run covering the
// whole range is flat, not a peak.
std::vector<Peak> local_maxima(const SmoothedHistogram& s) {
  std::vector<Peak> peaks;
  int i = 0;
  while (i < 256) {
    int j = i;
    while (j + 1 < 256 && s[j + 1] == s[i]) ++j;
    const bool left_lower = i == 0 || s[i - 1] < s[i];
    const bool right_lower = j == 255 || s[j + 1] < s[i];
    if (left_lower && right_lower && !(i == 0 && j == 255) && s[i] > 0.0) {
      peaks.push_back({(i + j) / 2, s[i]});
    }
    i = j + 1;
  }
  return peaks;
}

std::uint64_t window_mass(const ChannelHistogram& hist, int center, int half) {
  std::uint64_t mass = 0;
  for (int t = std::max(0, center - half); t <= std::min(255, center + half); ++t) {
    mass += hist.bins[static_cast<std::size_t>(t)];
  }
  return mass;
}

// Smoothed peaks drift toward the ends of the range (the shrunken edge
// windows average fewer bins), so snap to the tallest raw bin in the window.
int refine_peak(const ChannelHistogram& hist, int tone, int half) {
  int best = std::max(0, tone - half);
  for (int t = best; t <= std::min(255, tone + half); ++t) {
    if (hist.bins[static_cast<std::size_t>(t)] > hist.bins[static_cast<std::size_t>(best)]) best = t;
  }
  return best;
}

}  // namespace

std::uint64_t ChannelHistogram::total() const noexcept {
  return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

ChannelHistogram channel_histogram(const RasterImage& image, Channel channel) {
  ChannelHistogram hist;
  for (const Rgb& p : image.values()) ++hist.bins[channel_of(p, channel)];
  return hist;
}

SmoothedHistogram smooth_histogram(const ChannelHistogram& hist, int window) {
  if (window < 1 || window > 31 || window % 2 == 0) throw InvalidWindow(window);
  const int half = window / 2;
  SmoothedHistogram out{};
  for (int t = 0; t < 256; ++t) {
    const int lo = std::max(0, t - half);
    const int hi = std::min(255, t + half);
    out[static_cast<std::size_t>(t)] =
        static_cast<double>(window_mass(hist, t, half)) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

ThresholdReport auto_threshold(const ChannelHistogram& hist) {
  const std::uint64_t total = hist.total();
  if (total == 0) throw NotBimodal("histogram is empty");

  const SmoothedHistogram smoothed = smooth_histogram(hist, kAutoThresholdWindow);
  const std::vector<Peak> peaks = local_maxima(smoothed);

  std::optional<Peak> bright;
  for (const Peak& p : peaks) {
    if (p.tone >= 128 && (!bright || p.height > bright->height)) bright = p;
  }
  if (!bright) throw NotBimodal("no bright peak in tones 128..255");

  const double floor = kDarkPeakFloor * static_cast<double>(total);
  std::optional<Peak> dark;
  for (const Peak& p : peaks) {
    if (p.tone > kDarkHalfEnd) break;
    const auto mass = window_mass(hist, p.tone, kAutoThresholdWindow / 2);
    if (static_cast<double>(mass) < floor) continue;
    if (!dark || p.height > dark->height) dark = p;
  }
  if (!dark) {
    throw NotBimodal("no significant dark peak in tones 0.." + std::to_string(kDarkHalfEnd));
  }
  const int half = kAutoThresholdWindow / 2;
  const int dark_tone = refine_peak(hist, dark->tone, half);
  const int bright_tone = refine_peak(hist, bright->tone, half);
  if (bright_tone - dark_tone < 2) {
    throw NotBimodal("dark and bright peaks are adjacent; no valley between them");
  }

  int valley = dark_tone + 1;
  for (int t = dark_tone + 1; t < bright_tone; ++t) {
    if (hist.bins[static_cast<std::size_t>(t)] < hist.bins[static_cast<std::size_t>(valley)]) {
      valley = t;
    }
  }
  return {dark_tone, bright_tone, valley, valley, ThresholdMode::Auto};
}

ThresholdReport manual_threshold(int threshold) {
  if (threshold < 1 || threshold > 255) {
    throw InvalidArgument("threshold must be in [1, 255], got " + std::to_string(threshold));
  }
  ThresholdReport report;
  report.threshold = threshold;
  report.mode = ThresholdMode::Manual;
  return report;
}

void write_histogram_csv(std::ostream& out, const RasterImage& image) {
  const ChannelHistogram r = channel_histogram(image, Channel::Red);
  const ChannelHistogram g = channel_histogram(image, Channel::Green);
  const ChannelHistogram b = channel_histogram(image, Channel::Blue);
  out << "bin,red,green,blue\n";
  for (std::size_t t = 0; t < 256; ++t) {
    out << t << ',' << r.bins[t] << ',' << g.bins[t] << ',' << b.bins[t] << '\n';
  }
}

}  // namespace palimpsest
