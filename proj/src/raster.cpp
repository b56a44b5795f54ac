#include "palimpsest/raster.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "palimpsest/error.hpp"
#include "palimpsest/hole_mask.hpp"

namespace palimpsest {

namespace {

void check_dimensions(int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("image dimensions must be positive, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

template <typename T>
Grid<T>::Grid(int width, int height, T fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

template <typename T>
Grid<T>::Grid(int width, int height, std::vector<T> values)
    : width_(width), height_(height), data_(std::move(values)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InvalidArgument("pixel count does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

template class Grid<Rgb>;
template class Grid<Tone>;

std::string_view to_string(Channel c) noexcept {
  switch (c) {
    case Channel::Red: return "red";
    case Channel::Green: return "green";
    case Channel::Blue: return "blue";
  }
  return "red";
}

Channel parse_channel(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "red" || lower == "r") return Channel::Red;
  if (lower == "green" || lower == "g") return Channel::Green;
  if (lower == "blue" || lower == "b") return Channel::Blue;
  throw InvalidArgument("unknown channel '" + std::string(name) + "'");
}

Rgb parse_hex_color(std::string_view text) {
  if (!text.empty() && text.front() == '#') text.remove_prefix(1);
  if (text.size() != 6 || !std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isxdigit(c) != 0;
      })) {
    throw InvalidArgument("expected a #RRGGBB color, got '" + std::string(text) + "'");
  }
  const auto byte = [&](std::size_t at) {
    return static_cast<Tone>(std::stoi(std::string(text.substr(at, 2)), nullptr, 16));
  };
  return {byte(0), byte(2), byte(4)};
}

std::string to_hex(const Rgb& c) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "#";
  for (Tone t : {c.r, c.g, c.b}) {
    out += kDigits[t >> 4];
    out += kDigits[t & 0xf];
  }
  return out;
}

GrayImage extract_channel_gray(const RasterImage& image, Channel channel) {
  std::vector<Tone> values(image.size());
  std::transform(image.values().begin(), image.values().end(), values.begin(),
                 [channel](const Rgb& p) { return channel_of(p, channel); });
  return GrayImage(image.width(), image.height(), std::move(values));
}

RasterImage to_rgb(const GrayImage& gray) {
  std::vector<Rgb> values(gray.size());
  std::transform(gray.values().begin(), gray.values().end(), values.begin(),
                 [](Tone t) { return Rgb{t, t, t}; });
  return RasterImage(gray.width(), gray.height(), std::move(values));
}

// HoleMask

std::size_t HoleMask::count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cells_.values().begin(), cells_.values().end(),
                    [](std::uint8_t v) { return v != 0; }));
}

bool HoleMask::subset_of(const HoleMask& other) const {
  if (!same_shape(other)) {
    throw DimensionMismatch("mask subset test on different shapes");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (is_hole(i) && !other.is_hole(i)) return false;
  }
  return true;
}

GrayImage HoleMask::to_gray() const {
  GrayImage out(width(), height());
  for (std::size_t i = 0; i < size(); ++i) out[i] = is_hole(i) ? 255 : 0;
  return out;
}

HoleMask HoleMask::from_gray(const GrayImage& gray) {
  HoleMask mask(gray.width(), gray.height());
  for (std::size_t i = 0; i < gray.size(); ++i) mask.set(i, gray[i] >= 128);
  return mask;
}

HoleMask HoleMask::from_image(const RasterImage& image) {
  return from_gray(extract_channel_gray(image, Channel::Red));
}

}  // namespace palimpsest
