#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "palimpsest/error.hpp"
#include "palimpsest/histogram.hpp"
#include "support.hpp"

using namespace palimpsest;

namespace {

// Lowest-index argmin of raw bins over [lo, hi].
int brute_force_argmin(const ChannelHistogram& h, int lo, int hi) {
  int best = lo;
  for (int t = lo; t <= hi; ++t) {
    if (h.bins[static_cast<std::size_t>(t)] < h.bins[static_cast<std::size_t>(best)]) best = t;
  }
  return best;
}

}  // namespace

TEST_CASE("channel_histogram counts tones") {
  const RasterImage one(1, 1, Rgb{160, 20, 200});
  const ChannelHistogram h = channel_histogram(one, Channel::Red);
  CHECK(h.bins[160] == 1);
  CHECK(h.total() == 1);

  const ChannelHistogram u = channel_histogram(RasterImage(2, 2, Rgb{50, 60, 70}), Channel::Blue);
  CHECK(u.bins[70] == 4);
  CHECK(u.total() == 4);
}

TEST_CASE("histogram conservation and permutation invariance") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RasterImage img = palimpsest::testing::random_image(23, 11, seed);
    for (Channel c : {Channel::Red, Channel::Green, Channel::Blue}) {
      const ChannelHistogram h = channel_histogram(img, c);
      CHECK(h.total() == img.size());
      std::vector<Rgb> shuffled = img.values();
      std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(seed + 99));
      CHECK(channel_histogram(RasterImage(23, 11, shuffled), c) == h);
    }
  }
}

TEST_CASE("smooth_histogram") {
  ChannelHistogram h;
  h.bins[100] = 5;
  const SmoothedHistogram s1 = smooth_histogram(h, 1);
  for (std::size_t t = 0; t < 256; ++t) CHECK(s1[t] == static_cast<double>(h.bins[t]));

  const SmoothedHistogram s5 = smooth_histogram(h, 5);
  for (std::size_t t = 98; t <= 102; ++t) CHECK(s5[t] == doctest::Approx(1.0));
  CHECK(s5[97] == 0.0);
  CHECK(s5[103] == 0.0);

  ChannelHistogram flat;
  flat.bins.fill(7);
  for (int w : {1, 3, 5, 31}) {
    const SmoothedHistogram s = smooth_histogram(flat, w);
    CHECK(std::all_of(s.begin(), s.end(), [](double v) { return v == 7.0; }));
  }

  CHECK_THROWS_AS(smooth_histogram(h, 4), InvalidWindow);
  CHECK_THROWS_AS(smooth_histogram(h, 0), InvalidWindow);
  CHECK_THROWS_AS(smooth_histogram(h, 33), InvalidWindow);
}

TEST_CASE("auto_threshold on a constructed bimodal histogram") {
  ChannelHistogram h;
  for (int t = 0; t < 256; ++t) h.bins[static_cast<std::size_t>(t)] = 1 + static_cast<std::uint64_t>(std::abs(t - 120));
  h.bins[120] = 0;
  h.bins[40] = 1000;
  h.bins[200] = 8000;
  const ThresholdReport r = auto_threshold(h);
  CHECK(r.mode == ThresholdMode::Auto);
  CHECK(r.threshold > 40);
  CHECK(r.threshold < 200);
  CHECK(r.threshold == brute_force_argmin(h, 41, 199));
  CHECK(r.threshold == 120);
  CHECK(r.threshold == r.valley);
  CHECK(r.dark_peak == 40);
}

TEST_CASE("auto_threshold locates ink next to tone 0") {
  for (int ink = 0; ink <= 4; ++ink) {
    ChannelHistogram h;
    h.bins[static_cast<std::size_t>(ink)] = 300;
    h.bins[210] = 20000;
    const ThresholdReport r = auto_threshold(h);
    CHECK(r.dark_peak == ink);
    CHECK(r.threshold == ink + 1);
  }
}

TEST_CASE("auto_threshold tie-break over an all-zero valley") {
  ChannelHistogram h;
  h.bins[40] = 500;
  h.bins[200] = 500;
  const ThresholdReport r = auto_threshold(h);
  CHECK(r.dark_peak == 40);
  CHECK(r.bright_peak == 200);
  CHECK(r.valley == 41);
  CHECK(r.threshold == 41);
}

TEST_CASE("auto_threshold refuses non-bimodal histograms") {
  ChannelHistogram flat;
  flat.bins.fill(100);
  CHECK_THROWS_AS(auto_threshold(flat), NotBimodal);

  ChannelHistogram bright_only;
  bright_only.bins[210] = 10000;
  CHECK_THROWS_AS(auto_threshold(bright_only), NotBimodal);

  // A dark bump below 0.1% of the pixels is noise.
  ChannelHistogram faint;
  faint.bins[220] = 100000;
  faint.bins[30] = 50;
  CHECK_THROWS_AS(auto_threshold(faint), NotBimodal);
  faint.bins[30] = 101;
  CHECK(auto_threshold(faint).threshold == 31);

  CHECK_THROWS_AS(auto_threshold(ChannelHistogram{}), NotBimodal);
}

TEST_CASE("auto_threshold invariants on random two-population images") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    ChannelHistogram h;
    const int dark = static_cast<int>(rng() % 100);
    const int bright = 140 + static_cast<int>(rng() % 100);
    for (int k = 0; k < 3000; ++k) ++h.bins[static_cast<std::size_t>(bright + static_cast<int>(rng() % 15))];
    for (int k = 0; k < 300; ++k) ++h.bins[static_cast<std::size_t>(dark + static_cast<int>(rng() % 15))];
    ThresholdReport r;
    try {
      r = auto_threshold(h);
    } catch (const NotBimodal&) {
      continue;
    }
    CHECK(r.dark_peak < r.threshold);
    CHECK(r.threshold <= r.bright_peak);
    CHECK(r.threshold >= 1);
    CHECK(auto_threshold(h) == r);
  }
}

TEST_CASE("manual threshold") {
  const ThresholdReport r = manual_threshold(160);
  CHECK(r.mode == ThresholdMode::Manual);
  CHECK(r.threshold == 160);
  CHECK_THROWS_AS(manual_threshold(0), InvalidArgument);
  CHECK_THROWS_AS(manual_threshold(256), InvalidArgument);
}

TEST_CASE("histogram CSV layout") {
  RasterImage img(2, 1);
  img.at(0, 0) = {0, 1, 2};
  img.at(1, 0) = {0, 255, 2};
  std::ostringstream out;
  write_histogram_csv(out, img);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "bin,red,green,blue");
  std::getline(in, line);
  CHECK(line == "0,2,0,0");
  std::getline(in, line);
  CHECK(line == "1,0,1,0");
  std::getline(in, line);
  CHECK(line == "2,0,0,2");
  int rows = 3;
  std::string last;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 256);
  CHECK(last == "255,0,1,0");
}
