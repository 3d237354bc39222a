#include "navtrust/frame_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace navtrust::io {

namespace {

constexpr char kDf32Magic[8] = {'N', 'A', 'V', 'D', 'F', '3', '2', '\0'};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw IoError("cannot open " + path.string() + " (" +
                  (mode[0] == 'r' ? "read" : "write") + ")");
  }
  return f;
}

[[noreturn]] void png_error_to_exception(png_structp, png_const_charp message) {
  throw IoError(std::string("libpng: ") + message);
}

void png_warning_silencer(png_structp, png_const_charp) {}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                 png_error_to_exception, png_warning_silencer);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw IoError("libpng: cannot allocate read structs");
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                  png_error_to_exception, png_warning_silencer);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw IoError("libpng: cannot allocate write structs");
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

bool is_df32(const std::filesystem::path& path) {
  return path.extension() == ".df32";
}

}  // namespace

RgbFrame load_rgb_png(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  PngReader reader;
  png_init_io(reader.png, file.get());
  png_read_info(reader.png, reader.info);

  const png_uint_32 width = png_get_image_width(reader.png, reader.info);
  const png_uint_32 height = png_get_image_height(reader.png, reader.info);
  const int color = png_get_color_type(reader.png, reader.info);
  const int depth = png_get_bit_depth(reader.png, reader.info);

  // normalize everything to 8-bit RGB
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(reader.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
    png_set_expand_gray_1_2_4_to_8(reader.png);
  }
  if (png_get_valid(reader.png, reader.info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(reader.png);
  }
  if (depth == 16) png_set_strip_16(reader.png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(reader.png);
  }
  png_set_strip_alpha(reader.png);
  png_read_update_info(reader.png, reader.info);

  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * 3);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * 3;
  }
  png_read_image(reader.png, rows.data());
  png_read_end(reader.png, nullptr);

  return RgbFrame(static_cast<int>(width), static_cast<int>(height),
                  std::move(pixels));
}

void save_rgb_png(const RgbFrame& frame, const std::filesystem::path& path) {
  FilePtr file = open_file(path, "wb");
  PngWriter writer;
  png_init_io(writer.png, file.get());
  png_set_IHDR(writer.png, writer.info, frame.width(), frame.height(), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(writer.png, writer.info);

  std::vector<png_const_bytep> rows(frame.height());
  const std::uint8_t* data = frame.pixels().data();
  for (int y = 0; y < frame.height(); ++y) {
    rows[y] = data + static_cast<std::size_t>(y) * frame.width() * 3;
  }
  png_write_image(writer.png, const_cast<png_bytepp>(rows.data()));
  png_write_end(writer.png, nullptr);
}

DepthFrame load_depth(const std::filesystem::path& path, float valid_max) {
  if (is_df32(path)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " (read)");
    char magic[8];
    std::uint32_t width = 0, height = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&width), sizeof width);
    in.read(reinterpret_cast<char*>(&height), sizeof height);
    if (!in || std::memcmp(magic, kDf32Magic, sizeof magic) != 0) {
      throw IoError(path.string() + " is not a df32 depth frame");
    }
    std::vector<float> values(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(float)));
    if (!in) throw IoError(path.string() + " is truncated");
    for (float& v : values) {
      if (!(v >= 0.0f)) v = 0.0f;
      if (v > valid_max) v = valid_max;
    }
    return DepthFrame(static_cast<int>(width), static_cast<int>(height),
                      std::move(values), valid_max);
  }

  FilePtr file = open_file(path, "rb");
  PngReader reader;
  png_init_io(reader.png, file.get());
  png_read_info(reader.png, reader.info);

  if (png_get_color_type(reader.png, reader.info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(reader.png, reader.info) != 16) {
    throw IoError(path.string() + ": depth PNG must be 16-bit grayscale");
  }
  const png_uint_32 width = png_get_image_width(reader.png, reader.info);
  const png_uint_32 height = png_get_image_height(reader.png, reader.info);
  png_read_update_info(reader.png, reader.info);

  std::vector<std::uint8_t> raw(static_cast<std::size_t>(width) * height * 2);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = raw.data() + static_cast<std::size_t>(y) * width * 2;
  }
  png_read_image(reader.png, rows.data());
  png_read_end(reader.png, nullptr);

  std::vector<float> values(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < values.size(); ++i) {
    // network byte order: high byte first
    const unsigned millimeters = (raw[2 * i] << 8) | raw[2 * i + 1];
    float meters = static_cast<float>(millimeters) / 1000.0f;
    if (meters > valid_max) meters = valid_max;
    values[i] = meters;
  }
  return DepthFrame(static_cast<int>(width), static_cast<int>(height),
                    std::move(values), valid_max);
}

void save_depth(const DepthFrame& frame, const std::filesystem::path& path) {
  if (is_df32(path)) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " (write)");
    const auto width = static_cast<std::uint32_t>(frame.width());
    const auto height = static_cast<std::uint32_t>(frame.height());
    out.write(kDf32Magic, sizeof kDf32Magic);
    out.write(reinterpret_cast<const char*>(&width), sizeof width);
    out.write(reinterpret_cast<const char*>(&height), sizeof height);
    out.write(reinterpret_cast<const char*>(frame.values().data()),
              static_cast<std::streamsize>(frame.values().size() * sizeof(float)));
    if (!out) throw IoError("cannot write " + path.string());
    return;
  }

  FilePtr file = open_file(path, "wb");
  PngWriter writer;
  png_init_io(writer.png, file.get());
  png_set_IHDR(writer.png, writer.info, frame.width(), frame.height(), 16,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(writer.png, writer.info);

  std::vector<std::uint8_t> raw(static_cast<std::size_t>(frame.width()) *
                                frame.height() * 2);
  for (std::size_t i = 0; i < frame.values().size(); ++i) {
    double millimeters = round_away(frame.values()[i] * 1000.0);
    if (millimeters > 65535.0) millimeters = 65535.0;
    if (millimeters < 0.0) millimeters = 0.0;
    const auto v = static_cast<std::uint16_t>(millimeters);
    raw[2 * i] = static_cast<std::uint8_t>(v >> 8);
    raw[2 * i + 1] = static_cast<std::uint8_t>(v & 0xFF);
  }
  std::vector<png_const_bytep> rows(frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    rows[y] = raw.data() + static_cast<std::size_t>(y) * frame.width() * 2;
  }
  png_write_image(writer.png, const_cast<png_bytepp>(rows.data()));
  png_write_end(writer.png, nullptr);
}

}  // namespace navtrust::io
