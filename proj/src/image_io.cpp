#include "palimpsest/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include "palimpsest/error.hpp"

namespace palimpsest {

namespace fs = std::filesystem;

namespace {

std::vector<unsigned char> read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw FileNotFound(path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& header,
                const std::vector<unsigned char>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(body.data()),
            static_cast<std::streamsize>(body.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

// ---- PPM / PGM ---------------------------------------------------------

class PnmHeaderReader {
 public:
  PnmHeaderReader(const std::vector<unsigned char>& data, const fs::path& path)
      : data_(data), path_(path) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) {
      throw MalformedImage("bad PNM header in " + path_.string());
    }
    long v = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      v = v * 10 + (data_[pos_++] - '0');
      if (v > 1'000'000'000) throw MalformedImage("PNM header value too large");
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
      throw MalformedImage("missing raster separator in " + path_.string());
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& data_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

RasterImage decode_pnm(const std::vector<unsigned char>& data, const fs::path& path) {
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '6' && data[1] != '5')) {
    throw MalformedImage("not a binary PPM/PGM: " + path.string());
  }
  const bool rgb = data[1] == '6';
  PnmHeaderReader header(data, path);
  header.skip(2);
  const long width = header.next_int();
  const long height = header.next_int();
  const long maxval = header.next_int();
  if (width < 1 || height < 1) throw MalformedImage("PNM dimensions must be positive");
  if (maxval < 1 || maxval > 65535) throw MalformedImage("PNM maxval out of range");
  if (maxval != 255) {
    throw UnsupportedDepth("only 8-bit PNM (maxval 255) is supported, got maxval " +
                           std::to_string(maxval));
  }
  const std::size_t start = header.raster_start();
  const std::size_t channels = rgb ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (data.size() - start < count * channels) {
    throw MalformedImage("truncated PNM raster in " + path.string());
  }
  std::vector<Rgb> pixels(count);
  const unsigned char* p = data.data() + start;
  for (std::size_t i = 0; i < count; ++i) {
    if (rgb) {
      pixels[i] = {p[0], p[1], p[2]};
      p += 3;
    } else {
      pixels[i] = {p[0], p[0], p[0]};
      p += 1;
    }
  }
  return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::string ppm_header(int width, int height) {
  return "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
}

void write_ppm(const RasterImage& image, const fs::path& path) {
  std::vector<unsigned char> body;
  body.reserve(image.size() * 3);
  for (const Rgb& p : image.values()) {
    body.push_back(p.r);
    body.push_back(p.g);
    body.push_back(p.b);
  }
  write_file(path, ppm_header(image.width(), image.height()), body);
}

// ---- PNG ---------------------------------------------------------------

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReadState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadState() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct PngWriteState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteState() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

void png_warning_sink(png_structp, png_const_charp) {}

// Records the message in the caller's buffer instead of printing it.
[[noreturn]] void png_error_sink(png_structp png, png_const_charp msg) {
  if (auto* buf = static_cast<char*>(png_get_error_ptr(png))) {
    std::snprintf(buf, 256, "%s", msg);
  }
  png_longjmp(png, 1);
}

// libpng reports errors by longjmp; the only frame between libpng and the
// setjmp point is libpng itself, and the buffers live in the caller.
bool png_decode_rows(std::FILE* file, PngReadState& st, png_uint_32& width,
                     png_uint_32& height, int& bit_depth, std::vector<unsigned char>& rgb,
                     std::vector<png_bytep>& rows, char (&message)[256]) {
  st.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, message, png_error_sink,
                                  png_warning_sink);
  if (st.png == nullptr) {
    std::snprintf(message, sizeof message, "libpng initialisation failed");
    return false;
  }
  st.info = png_create_info_struct(st.png);
  if (st.info == nullptr) {
    std::snprintf(message, sizeof message, "libpng initialisation failed");
    return false;
  }
  if (setjmp(png_jmpbuf(st.png))) return false;
  png_init_io(st.png, file);
  png_read_info(st.png, st.info);
  int color_type = 0;
  png_get_IHDR(st.png, st.info, &width, &height, &bit_depth, &color_type, nullptr, nullptr,
               nullptr);
  if (bit_depth == 16) return true;  // caller rejects

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(st.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(st.png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(st.png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(st.png);
  }
  png_set_interlace_handling(st.png);
  png_read_update_info(st.png, st.info);
  if (png_get_rowbytes(st.png, st.info) != static_cast<png_size_t>(width) * 3) {
    std::snprintf(message, sizeof message, "unexpected PNG row layout");
    return false;
  }
  rgb.resize(static_cast<std::size_t>(width) * height * 3);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = rgb.data() + static_cast<std::size_t>(y) * width * 3;
  png_read_image(st.png, rows.data());
  png_read_end(st.png, nullptr);
  return true;
}

RasterImage decode_png(const fs::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string());
  PngReadState st;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  std::vector<unsigned char> rgb;
  std::vector<png_bytep> rows;
  char message[256] = {};
  if (!png_decode_rows(file.get(), st, width, height, bit_depth, rgb, rows, message)) {
    throw MalformedImage("corrupt or truncated PNG (" + std::string(message) +
                         "): " + path.string());
  }
  if (bit_depth == 16) throw UnsupportedDepth("16-bit PNG is not supported: " + path.string());
  std::vector<Rgb> pixels(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = {rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]};
  }
  return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

bool png_encode(std::FILE* file, PngWriteState& st, png_uint_32 width, png_uint_32 height,
                int color_type, const std::vector<png_bytep>& rows) {
  st.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_sink,
                                   png_warning_sink);
  if (st.png == nullptr) return false;
  st.info = png_create_info_struct(st.png);
  if (st.info == nullptr) return false;
  if (setjmp(png_jmpbuf(st.png))) return false;
  png_init_io(st.png, file);
  png_set_IHDR(st.png, st.info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(st.png, st.info);
  png_write_image(st.png, const_cast<png_bytepp>(rows.data()));
  png_write_end(st.png, nullptr);
  return true;
}

void write_png(const std::vector<unsigned char>& bytes, int width, int height, int channels,
               const fs::path& path) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot write " + path.string());
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  auto* base = const_cast<unsigned char*>(bytes.data());
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] =
        base + static_cast<std::size_t>(y) * static_cast<std::size_t>(width) * channels;
  }
  PngWriteState st;
  const int color_type = channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY;
  if (!png_encode(file.get(), st, static_cast<png_uint_32>(width),
                  static_cast<png_uint_32>(height), color_type, rows)) {
    throw IoError("PNG encoding failed for " + path.string());
  }
  if (std::fflush(file.get()) != 0) throw IoError("write failed for " + path.string());
}

bool has_png_magic(const std::vector<unsigned char>& head) {
  static constexpr unsigned char kMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return head.size() >= 8 && std::equal(kMagic, kMagic + 8, head.begin());
}

}  // namespace

ImageFormat format_from_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".ppm" || ext == ".pnm" || ext == ".pgm") return ImageFormat::Ppm;
  return ImageFormat::Png;
}

RasterImage load_image(const fs::path& path, std::optional<ImageFormat> format) {
  std::vector<unsigned char> data = read_file(path);
  if (!format) {
    if (has_png_magic(data)) {
      format = ImageFormat::Png;
    } else if (data.size() >= 2 && data[0] == 'P') {
      format = ImageFormat::Ppm;
    } else {
      throw MalformedImage("unrecognised image format: " + path.string());
    }
  }
  if (*format == ImageFormat::Ppm) return decode_pnm(data, path);
  if (!has_png_magic(data)) throw MalformedImage("bad PNG signature: " + path.string());
  return decode_png(path);
}

void save_image(const RasterImage& image, const fs::path& path, ImageFormat format) {
  if (format == ImageFormat::Ppm) {
    write_ppm(image, path);
    return;
  }
  std::vector<unsigned char> bytes;
  bytes.reserve(image.size() * 3);
  for (const Rgb& p : image.values()) {
    bytes.push_back(p.r);
    bytes.push_back(p.g);
    bytes.push_back(p.b);
  }
  write_png(bytes, image.width(), image.height(), 3, path);
}

void save_image(const GrayImage& image, const fs::path& path, ImageFormat format) {
  if (format == ImageFormat::Ppm) {
    write_ppm(to_rgb(image), path);
    return;
  }
  write_png(image.values(), image.width(), image.height(), 1, path);
}

}  // namespace palimpsest
