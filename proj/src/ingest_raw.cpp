#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "ctcompand/ingest.hpp"

namespace ctc {
namespace {

// Larger than any plausible slice; keeps width*height*4 far from overflow.
constexpr std::uint64_t kMaxRawPixels = std::uint64_t{1} << 28;

std::uint32_t load_u32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

void store_u32(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

}  // namespace

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

HuSlice read_raw_float(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 16) throw TruncatedError("raw-float: header truncated");
  if (std::memcmp(bytes.data(), kRawFloatMagic, sizeof kRawFloatMagic) != 0) {
    throw FormatError("raw-float: magic number mismatch");
  }
  const std::uint64_t width = load_u32(bytes.data() + 8);
  const std::uint64_t height = load_u32(bytes.data() + 12);
  if (width == 0 || height == 0 || width * height > kMaxRawPixels) {
    throw FormatError("raw-float: unsupported dimensions " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
  const std::uint64_t count = width * height;
  if (bytes.size() - 16 < count * 4) throw TruncatedError("raw-float: payload truncated");

  std::vector<double> values(count);
  const std::uint8_t* p = bytes.data() + 16;
  for (std::uint64_t i = 0; i < count; ++i, p += 4) {
    values[i] = static_cast<double>(std::bit_cast<float>(load_u32(p)));
  }
  HuSlice slice;
  slice.values = Grid(width, height, std::move(values));
  return slice;
}

HuSlice load_raw_float(const std::filesystem::path& path) {
  HuSlice slice = read_raw_float(read_file(path));
  slice.source_id = path.filename().string();
  return slice;
}

std::vector<std::uint8_t> encode_raw_float(const Grid& values) {
  if (values.width() > std::numeric_limits<std::uint32_t>::max() ||
      values.height() > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError("raw-float: dimensions exceed 32 bits");
  }
  std::vector<std::uint8_t> out(16 + 4 * values.size());
  std::memcpy(out.data(), kRawFloatMagic, sizeof kRawFloatMagic);
  store_u32(out.data() + 8, static_cast<std::uint32_t>(values.width()));
  store_u32(out.data() + 12, static_cast<std::uint32_t>(values.height()));
  std::uint8_t* p = out.data() + 16;
  for (double v : values.values()) {
    store_u32(p, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    p += 4;
  }
  return out;
}

void save_raw_float(const std::filesystem::path& path, const Grid& values) {
  write_file(path, encode_raw_float(values));
}

HuSlice clip_metal(const HuSlice& slice, const CompandParams& p) {
  HuSlice out = slice;
  for (double& v : out.values.values()) v = std::clamp(v, p.hu_min_clip, p.hu_max_clip);
  return out;
}

HuSlice load_slice(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= sizeof kRawFloatMagic &&
      std::memcmp(bytes.data(), kRawFloatMagic, sizeof kRawFloatMagic) == 0) {
    HuSlice slice = read_raw_float(bytes);
    slice.source_id = path.filename().string();
    return slice;
  }
  HuSlice slice = to_hu_slice(read_dicom(bytes));
  slice.source_id = path.filename().string();
  return slice;
}

}  // namespace ctc
