#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "palimpsest/error.hpp"
#include "palimpsest/image_io.hpp"
#include "palimpsest/raster.hpp"
#include "support.hpp"

using namespace palimpsest;
using palimpsest::testing::TempDir;

namespace {

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("grid rejects bad dimensions") {
  CHECK_THROWS_AS(RasterImage(0, 3), InvalidArgument);
  CHECK_THROWS_AS(RasterImage(2, 2, std::vector<Rgb>(3)), InvalidArgument);
}

TEST_CASE("load 1x1 P6") {
  TempDir dir("raster");
  write_bytes(dir / "a.ppm", std::string("P6\n1 1\n255\n") + "\x0a\x14\x1e");
  const RasterImage img = load_image(dir / "a.ppm");
  CHECK(img.width() == 1);
  CHECK(img.height() == 1);
  CHECK(img.at(0, 0) == Rgb{10, 20, 30});
}

TEST_CASE("2x2 white P6") {
  TempDir dir("raster");
  write_bytes(dir / "w.ppm", "P6\n2 2\n255\n" + std::string(12, '\xff'));
  const RasterImage img = load_image(dir / "w.ppm");
  CHECK(img == RasterImage(2, 2, kWhite));
}

TEST_CASE("PPM header tolerates comments and odd whitespace") {
  TempDir dir("raster");
  write_bytes(dir / "c.ppm", std::string("P6 # scanner\n# more\n 2\t1 \n255\n") + "\x01\x02\x03\x04\x05\x06");
  const RasterImage img = load_image(dir / "c.ppm");
  CHECK(img.at(1, 0) == Rgb{4, 5, 6});
}

TEST_CASE("PGM is expanded to equal RGB") {
  TempDir dir("raster");
  write_bytes(dir / "g.pgm", std::string("P5\n2 1\n255\n") + "\x07\xc8");
  const RasterImage img = load_image(dir / "g.pgm");
  CHECK(img.at(0, 0) == Rgb{7, 7, 7});
  CHECK(img.at(1, 0) == Rgb{200, 200, 200});
}

TEST_CASE("load errors") {
  TempDir dir("raster");
  CHECK_THROWS_AS(load_image(dir / "missing.png"), FileNotFound);

  write_bytes(dir / "trunc.ppm", "P6\n4 4\n255\n\x01\x02");
  CHECK_THROWS_AS(load_image(dir / "trunc.ppm"), MalformedImage);

  write_bytes(dir / "junk.bin", "hello world");
  CHECK_THROWS_AS(load_image(dir / "junk.bin"), MalformedImage);

  write_bytes(dir / "deep.ppm", "P6\n1 1\n65535\n" + std::string(6, '\0'));
  CHECK_THROWS_AS(load_image(dir / "deep.ppm"), UnsupportedDepth);

  write_bytes(dir / "bad.png", "\x89PNG\r\n\x1a\nnot really png data");
  CHECK_THROWS_AS(load_image(dir / "bad.png"), MalformedImage);
}

TEST_CASE("PPM writer uses exact framing") {
  TempDir dir("raster");
  RasterImage img(2, 1);
  img.at(0, 0) = {1, 2, 3};
  img.at(1, 0) = {250, 251, 252};
  save_image(img, dir / "o.ppm");
  CHECK(read_bytes(dir / "o.ppm") == std::string("P6\n2 1\n255\n\x01\x02\x03\xfa\xfb\xfc"));
}

TEST_CASE("gray saved as PPM replicates the tone") {
  TempDir dir("raster");
  GrayImage g(2, 1, std::vector<Tone>{9, 130});
  save_image(g, dir / "g.ppm");
  const RasterImage back = load_image(dir / "g.ppm");
  CHECK(back.at(0, 0) == Rgb{9, 9, 9});
  CHECK(back.at(1, 0) == Rgb{130, 130, 130});
}

TEST_CASE("round trip is pixel identical in both formats") {
  TempDir dir("raster");
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const RasterImage img = palimpsest::testing::random_image(17 + static_cast<int>(seed), 9, seed);
    save_image(img, dir / "r.png");
    save_image(img, dir / "r.ppm");
    CHECK(load_image(dir / "r.png") == img);
    CHECK(load_image(dir / "r.ppm") == img);
    // second generation
    save_image(load_image(dir / "r.png"), dir / "r2.png");
    CHECK(load_image(dir / "r2.png") == img);
  }
}

TEST_CASE("gray PNG loads as equal RGB") {
  TempDir dir("raster");
  GrayImage g(3, 2, std::vector<Tone>{0, 50, 100, 150, 200, 255});
  save_image(g, dir / "g.png");
  CHECK(load_image(dir / "g.png") == to_rgb(g));
}

TEST_CASE("save to an unwritable location") {
  TempDir dir("raster");
  const RasterImage img(1, 1);
  CHECK_THROWS_AS(save_image(img, dir / "no" / "such" / "dir.png"), IoError);
  CHECK_THROWS_AS(save_image(img, dir / "no" / "such" / "dir.ppm"), IoError);
}

TEST_CASE("extract_channel_gray") {
  const RasterImage img(1, 1, Rgb{10, 20, 30});
  CHECK(extract_channel_gray(img, Channel::Blue).at(0, 0) == 30);
  CHECK(extract_channel_gray(img, Channel::Red).at(0, 0) == 10);
  CHECK(extract_channel_gray(img, Channel::Green).at(0, 0) == 20);

  const RasterImage uniform(4, 3, Rgb{7, 7, 7});
  for (Channel c : {Channel::Red, Channel::Green, Channel::Blue}) {
    const GrayImage g = extract_channel_gray(uniform, c);
    CHECK(g.width() == 4);
    CHECK(g.height() == 3);
    CHECK(g == GrayImage(4, 3, Tone{7}));
    CHECK(extract_channel_gray(to_rgb(g), Channel::Red) == g);
  }
}

TEST_CASE("channel and color parsing") {
  CHECK(parse_channel("Blue") == Channel::Blue);
  CHECK(parse_channel("r") == Channel::Red);
  CHECK_THROWS_AS(parse_channel("alpha"), InvalidArgument);
  CHECK(parse_hex_color("#B4a08c") == Rgb{180, 160, 140});
  CHECK(parse_hex_color("000102") == Rgb{0, 1, 2});
  CHECK(to_hex(Rgb{180, 160, 140}) == "#b4a08c");
  CHECK_THROWS_AS(parse_hex_color("#12345"), InvalidArgument);
  CHECK_THROWS_AS(parse_hex_color("#12345g"), InvalidArgument);
}

#include <png.h>

TEST_CASE("RGBA PNG drops alpha without compositing") {
  TempDir dir("raster");
  const unsigned char rgba[] = {10, 20, 30, 0, 200, 100, 50, 128};
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = 2;
  image.height = 1;
  image.format = PNG_FORMAT_RGBA;
  REQUIRE(png_image_write_to_file(&image, (dir / "a.png").c_str(), 0, rgba, 0, nullptr));
  const RasterImage img = load_image(dir / "a.png");
  CHECK(img.at(0, 0) == Rgb{10, 20, 30});
  CHECK(img.at(1, 0) == Rgb{200, 100, 50});
}

TEST_CASE("16-bit PNG is rejected") {
  TempDir dir("raster");
  const png_uint_16 rgb[] = {1000, 2000, 3000};
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = 1;
  image.height = 1;
  image.format = PNG_FORMAT_LINEAR_RGB;
  REQUIRE(png_image_write_to_file(&image, (dir / "d.png").c_str(), 0, rgb, 0, nullptr));
  CHECK_THROWS_AS(load_image(dir / "d.png"), UnsupportedDepth);
}
