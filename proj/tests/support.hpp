#pragma once

// Test-only helpers. The brute-force inpainting simulator here shares no
// code with the library: nested vectors, full-grid scans, floating-point
// means rounded with std::round.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "palimpsest/hole_mask.hpp"
#include "palimpsest/raster.hpp"

namespace palimpsest::testing {

inline RasterImage uniform_image(int w, int h, Rgb c) { return RasterImage(w, h, c); }

inline RasterImage random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RasterImage img(w, h);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const auto v = rng();
    img[i] = {static_cast<Tone>(v), static_cast<Tone>(v >> 8), static_cast<Tone>(v >> 16)};
  }
  return img;
}

inline HoleMask random_mask(int w, int h, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  HoleMask m(w, h);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m.set(i, static_cast<double>(rng() % 10000) < density * 10000.0);
  }
  return m;
}

struct OracleRun {
  std::vector<std::vector<Rgb>> image;   // [y][x]
  std::vector<std::vector<bool>> holes;  // [y][x]
  std::vector<std::size_t> fills;        // per step, including the final 0
};

inline OracleRun brute_force_inpaint(const RasterImage& img, const HoleMask& mask, bool eight,
                                     int min_known, long max_steps = 1'000'000) {
  const int w = img.width();
  const int h = img.height();
  OracleRun run;
  run.image.assign(static_cast<std::size_t>(h), std::vector<Rgb>(static_cast<std::size_t>(w)));
  run.holes.assign(static_cast<std::size_t>(h), std::vector<bool>(static_cast<std::size_t>(w)));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      run.image[y][x] = img.at(x, y);
      run.holes[y][x] = mask.is_hole(x, y);
    }
  }
  for (long step = 0; step < max_steps; ++step) {
    auto next_img = run.image;
    auto next_holes = run.holes;
    std::size_t filled = 0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!run.holes[y][x]) continue;
        double sr = 0, sg = 0, sb = 0;
        int n = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!eight && dx != 0 && dy != 0) continue;
            const int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h || run.holes[ny][nx]) continue;
            sr += run.image[ny][nx].r;
            sg += run.image[ny][nx].g;
            sb += run.image[ny][nx].b;
            ++n;
          }
        }
        if (n >= min_known) {
          next_img[y][x] = {static_cast<Tone>(std::round(sr / n)),
                            static_cast<Tone>(std::round(sg / n)),
                            static_cast<Tone>(std::round(sb / n))};
          next_holes[y][x] = false;
          ++filled;
        }
      }
    }
    run.image = std::move(next_img);
    run.holes = std::move(next_holes);
    run.fills.push_back(filled);
    if (filled == 0) break;
  }
  return run;
}

inline bool matches(const OracleRun& run, const RasterImage& img, const HoleMask& holes) {
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (!(run.image[y][x] == img.at(x, y))) return false;
      if (run.holes[y][x] != holes.is_hole(x, y)) return false;
    }
  }
  return true;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("palimpsest-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace palimpsest::testing
