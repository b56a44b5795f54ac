#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace palimpsest {

using Tone = std::uint8_t;

struct Rgb {
  Tone r = 0;
  Tone g = 0;
  Tone b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};

enum class Channel { Red, Green, Blue };

constexpr Tone channel_of(const Rgb& p, Channel c) noexcept {
  switch (c) {
    case Channel::Red: return p.r;
    case Channel::Green: return p.g;
    case Channel::Blue: return p.b;
  }
  return p.r;
}

/// Parses "#RRGGBB" (the '#' is optional).
Rgb parse_hex_color(std::string_view text);
std::string to_hex(const Rgb& c);

std::string_view to_string(Channel c) noexcept;
/// Parses "red", "green", "blue" (case-insensitive, also "r"/"g"/"b").
Channel parse_channel(std::string_view name);

/// Row-major W x H grid of 8-bit values with a top-left origin.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{});
  Grid(int width, int height, std::vector<T> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  const T& at(int x, int y) const { return data_[index(x, y)]; }
  T& at(int x, int y) { return data_[index(x, y)]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T& operator[](std::size_t i) { return data_[i]; }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool same_shape(int w, int h) const noexcept { return w == width_ && h == height_; }
  template <typename U>
  bool same_shape(const Grid<U>& other) const noexcept {
    return same_shape(other.width(), other.height());
  }

  const std::vector<T>& values() const noexcept { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using RasterImage = Grid<Rgb>;
using GrayImage = Grid<Tone>;

/// Per-pixel selected-channel tone; dimensions preserved.
GrayImage extract_channel_gray(const RasterImage& image, Channel channel);

/// Replicates a gray tone across r = g = b.
RasterImage to_rgb(const GrayImage& gray);

extern template class Grid<Rgb>;
extern template class Grid<Tone>;

}  // namespace palimpsest
