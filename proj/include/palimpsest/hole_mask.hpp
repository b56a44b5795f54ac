#pragma once

#include <cstddef>
#include <cstdint>

#include "palimpsest/raster.hpp"

namespace palimpsest {

/// Boolean grid of removed pixels; true marks a hole. The mask, not the
/// white sentinel in the image, decides what counts as a hole.
class HoleMask {
 public:
  HoleMask() = default;
  HoleMask(int width, int height, bool fill = false)
      : cells_(width, height, fill ? 1 : 0) {}

  int width() const noexcept { return cells_.width(); }
  int height() const noexcept { return cells_.height(); }
  std::size_t size() const noexcept { return cells_.size(); }

  bool is_hole(int x, int y) const { return cells_.at(x, y) != 0; }
  bool is_hole(std::size_t i) const { return cells_[i] != 0; }
  void set(int x, int y, bool hole) { cells_.at(x, y) = hole ? 1 : 0; }
  void set(std::size_t i, bool hole) { cells_[i] = hole ? 1 : 0; }

  std::size_t index(int x, int y) const noexcept { return cells_.index(x, y); }
  bool contains(int x, int y) const noexcept { return cells_.contains(x, y); }
  template <typename T>
  bool same_shape(const Grid<T>& g) const noexcept {
    return cells_.same_shape(g);
  }
  bool same_shape(const HoleMask& m) const noexcept { return cells_.same_shape(m.cells_); }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  /// Every hole of *this is also a hole of `other`.
  bool subset_of(const HoleMask& other) const;

  /// Holes white (255), everything else black (0).
  GrayImage to_gray() const;
  /// Inverse of to_gray: tones >= 128 become holes.
  static HoleMask from_gray(const GrayImage& gray);
  static HoleMask from_image(const RasterImage& image);

  friend bool operator==(const HoleMask&, const HoleMask&) = default;

 private:
  Grid<std::uint8_t> cells_;
};

}  // namespace palimpsest
