#include "ctcompand/png.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>

#include "ctcompand/ingest.hpp"

namespace ctc {
namespace {

struct ErrorSink {
  char message[256] = "unknown error";
};

void on_error(png_structp png, png_const_charp message) {
  auto* sink = static_cast<ErrorSink*>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof sink->message, "%s", message);
  png_longjmp(png, 1);
}
void on_warning(png_structp, png_const_charp) {}

void append(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

struct Source {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

void consume(png_structp png, png_bytep data, png_size_t length) {
  auto* src = static_cast<Source*>(png_get_io_ptr(png));
  if (src->bytes.size() - src->offset < length) png_error(png, "truncated stream");
  std::memcpy(data, src->bytes.data() + src->offset, length);
  src->offset += length;
}

// Big-endian samples at the image's depth.
void pack_row(const LdrImage& image, std::size_t y, std::vector<png_byte>& row) {
  for (std::size_t x = 0; x < image.width; ++x) {
    const std::uint16_t v = image(x, y);
    if (image.bit_depth == 16) {
      row[2 * x] = static_cast<png_byte>(v >> 8);
      row[2 * x + 1] = static_cast<png_byte>(v & 0xFF);
    } else {
      row[x] = static_cast<png_byte>(v);
    }
  }
}

}  // namespace

std::vector<std::uint8_t> encode_png(const LdrImage& image) {
  if (image.bit_depth != 8 && image.bit_depth != 16) throw ParamError("PNG: bit depth must be 8 or 16");
  if (image.width == 0 || image.height == 0) throw ParamError("PNG: empty image");

  std::vector<std::uint8_t> out;
  std::vector<png_byte> row(image.width * (image.bit_depth == 16 ? 2 : 1));
  ErrorSink sink;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink, on_error, on_warning);
  if (png == nullptr) throw Error("PNG: cannot allocate writer");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw FormatError(std::string("PNG: ") + sink.message);
  }
  png_set_write_fn(png, &out, append, nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), image.bit_depth, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t y = 0; y < image.height; ++y) {
    pack_row(image, y, row);
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_png(const std::filesystem::path& path, const LdrImage& image) {
  write_file(path, encode_png(image));
}

LdrImage decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) throw FormatError("PNG: bad signature");
  ErrorSink sink;
  Source src{bytes, 0};
  LdrImage image;
  std::vector<png_byte> row;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink, on_error, on_warning);
  if (png == nullptr) throw Error("PNG: cannot allocate reader");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(std::string("PNG: ") + sink.message);
  }
  png_set_read_fn(png, &src, consume);
  png_read_info(png, info);
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY) png_error(png, "not grayscale");
  const int depth = png_get_bit_depth(png, info);
  if (depth != 8 && depth != 16) png_error(png, "unsupported bit depth");
  image.width = png_get_image_width(png, info);
  image.height = png_get_image_height(png, info);
  image.bit_depth = depth;
  const std::size_t bytes_per = depth == 16 ? 2 : 1;
  row.resize(image.width * bytes_per);
  image.values.resize(image.width * image.height);
  for (std::size_t y = 0; y < image.height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (std::size_t x = 0; x < image.width; ++x) {
      image.values[y * image.width + x] =
          bytes_per == 2 ? static_cast<std::uint16_t>((row[2 * x] << 8) | row[2 * x + 1]) : row[x];
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

}  // namespace ctc
