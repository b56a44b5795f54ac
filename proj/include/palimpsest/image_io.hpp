#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "palimpsest/raster.hpp"

namespace palimpsest {

enum class ImageFormat { Png, Ppm };

/// Chooses a format from the file extension (.ppm/.pnm/.pgm -> Ppm, else Png).
ImageFormat format_from_extension(const std::filesystem::path& path);

/// Loads an 8-bit image as RGB. Alpha is dropped, grayscale is expanded to
/// r = g = b, 16-bit data is rejected. With no explicit format the file's
/// magic bytes decide.
RasterImage load_image(const std::filesystem::path& path,
                       std::optional<ImageFormat> format = std::nullopt);

void save_image(const RasterImage& image, const std::filesystem::path& path,
                ImageFormat format);
void save_image(const GrayImage& image, const std::filesystem::path& path,
                ImageFormat format);

inline void save_image(const RasterImage& image, const std::filesystem::path& path) {
  save_image(image, path, format_from_extension(path));
}
inline void save_image(const GrayImage& image, const std::filesystem::path& path) {
  save_image(image, path, format_from_extension(path));
}

}  // namespace palimpsest
