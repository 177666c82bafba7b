// Minimal DICOM Part 10 reader for uncompressed little-endian CT slices.

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ctcompand/ingest.hpp"

namespace ctc {
namespace {

constexpr std::string_view kImplicitLittle = "1.2.840.10008.1.2";
constexpr std::string_view kExplicitLittle = "1.2.840.10008.1.2.1";
constexpr std::uint32_t kUndefinedLength = 0xFFFFFFFFu;

constexpr std::uint32_t tag(std::uint16_t group, std::uint16_t element) {
  return (std::uint32_t{group} << 16) | element;
}

constexpr std::uint32_t kTransferSyntax = tag(0x0002, 0x0010);
constexpr std::uint32_t kSamplesPerPixel = tag(0x0028, 0x0002);
constexpr std::uint32_t kPhotometric = tag(0x0028, 0x0004);
constexpr std::uint32_t kNumberOfFrames = tag(0x0028, 0x0008);
constexpr std::uint32_t kRows = tag(0x0028, 0x0010);
constexpr std::uint32_t kColumns = tag(0x0028, 0x0011);
constexpr std::uint32_t kPixelSpacing = tag(0x0028, 0x0030);
constexpr std::uint32_t kBitsAllocated = tag(0x0028, 0x0100);
constexpr std::uint32_t kBitsStored = tag(0x0028, 0x0101);
constexpr std::uint32_t kPixelRepresentation = tag(0x0028, 0x0103);
constexpr std::uint32_t kRescaleIntercept = tag(0x0028, 0x1052);
constexpr std::uint32_t kRescaleSlope = tag(0x0028, 0x1053);
constexpr std::uint32_t kPixelData = tag(0x7FE0, 0x0010);
constexpr std::uint32_t kItem = tag(0xFFFE, 0xE000);
constexpr std::uint32_t kItemDelimiter = tag(0xFFFE, 0xE00D);
constexpr std::uint32_t kSequenceDelimiter = tag(0xFFFE, 0xE0DD);

bool has_long_length(std::string_view vr) {
  static constexpr std::string_view kLong[] = {"OB", "OD", "OF", "OL", "OV", "OW", "SQ",
                                               "SV", "UC", "UN", "UR", "UT", "UV"};
  for (auto v : kLong) {
    if (v == vr) return true;
  }
  return false;
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw TruncatedError("DICOM: unexpected end of file");
  }
  std::uint16_t u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    const std::uint32_t lo = u16();
    return lo | (std::uint32_t{u16()} << 16);
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  void skip(std::size_t n) { take(n); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct Element {
  std::uint32_t tag = 0;
  std::uint32_t length = 0;
};

Element read_header(Reader& r, bool explicit_vr) {
  Element e;
  const std::uint16_t group = r.u16();
  e.tag = tag(group, r.u16());
  // Item and delimiter tags never carry a VR.
  if (group == 0xFFFE || !explicit_vr) {
    e.length = r.u32();
    return e;
  }
  const auto vr_bytes = r.take(2);
  const std::string_view vr(reinterpret_cast<const char*>(vr_bytes.data()), 2);
  if (has_long_length(vr)) {
    r.skip(2);
    e.length = r.u32();
  } else {
    e.length = r.u16();
  }
  return e;
}

void skip_undefined_sequence(Reader& r, bool explicit_vr);

// Skip nested elements until the item delimiter.
void skip_undefined_item(Reader& r, bool explicit_vr) {
  for (;;) {
    const Element e = read_header(r, explicit_vr);
    if (e.tag == kItemDelimiter) return;
    if (e.length == kUndefinedLength) {
      skip_undefined_sequence(r, explicit_vr);
    } else {
      r.skip(e.length);
    }
  }
}

void skip_undefined_sequence(Reader& r, bool explicit_vr) {
  for (;;) {
    const Element e = read_header(r, explicit_vr);
    if (e.tag == kSequenceDelimiter) return;
    if (e.tag != kItem) throw FormatError("DICOM: malformed sequence");
    if (e.length == kUndefinedLength) {
      skip_undefined_item(r, explicit_vr);
    } else {
      r.skip(e.length);
    }
  }
}

std::string trimmed(std::span<const std::uint8_t> raw) {
  std::string s(raw.begin(), raw.end());
  while (!s.empty() && (s.back() == ' ' || s.back() == '\0')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && s[start] == ' ') ++start;
  return s.substr(start);
}

std::optional<double> decimal_value(const std::string& text, std::size_t index = 0) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < index; ++i) {
    start = text.find('\\', start);
    if (start == std::string::npos) return std::nullopt;
    ++start;
  }
  const std::string part = text.substr(start, text.find('\\', start) - start);
  char* end = nullptr;
  const double v = std::strtod(part.c_str(), &end);
  if (end == part.c_str()) return std::nullopt;
  return v;
}

}  // namespace

double rescale_to_hu(std::int32_t stored, const DicomSliceMeta& meta) {
  return static_cast<double>(stored) * meta.rescale_slope + meta.rescale_intercept;
}

DicomImage read_dicom(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 132 || std::string_view(reinterpret_cast<const char*>(bytes.data()) + 128, 4) != "DICM") {
    throw FormatError("not a DICOM Part 10 file (missing DICM prefix)");
  }
  Reader r(bytes.subspan(132));

  // File meta group: always explicit VR little endian.
  std::string transfer_syntax;
  for (;;) {
    if (r.at_end()) throw FormatError("DICOM: no dataset after file meta group");
    Reader peek = r;
    if (peek.u16() != 0x0002) break;
    const Element e = read_header(r, true);
    const auto value = r.take(e.length);
    if (e.tag == kTransferSyntax) transfer_syntax = trimmed(value);
  }
  bool explicit_vr = false;
  if (transfer_syntax == kExplicitLittle) {
    explicit_vr = true;
  } else if (transfer_syntax != kImplicitLittle) {
    throw FormatError("DICOM: unsupported transfer syntax '" + transfer_syntax +
                      "' (only uncompressed little endian)");
  }

  std::map<std::uint32_t, std::span<const std::uint8_t>> found;
  while (!r.at_end()) {
    const Element e = read_header(r, explicit_vr);
    if (e.length == kUndefinedLength) {
      if (e.tag == kPixelData) throw FormatError("DICOM: encapsulated (compressed) pixel data");
      skip_undefined_sequence(r, explicit_vr);
      continue;
    }
    if (e.tag == kPixelData) {
      found[e.tag] = r.take(e.length);
      break;
    }
    const auto value = r.take(e.length);
    if ((e.tag >> 16) == 0x0028) found[e.tag] = value;
  }

  auto us = [&](std::uint32_t t) -> std::optional<std::uint16_t> {
    auto it = found.find(t);
    if (it == found.end() || it->second.size() < 2) return std::nullopt;
    return static_cast<std::uint16_t>(it->second[0] | (it->second[1] << 8));
  };
  auto text = [&](std::uint32_t t) -> std::optional<std::string> {
    auto it = found.find(t);
    if (it == found.end()) return std::nullopt;
    return trimmed(it->second);
  };

  if (us(kSamplesPerPixel).value_or(1) != 1) throw FormatError("DICOM: color images are not supported");
  if (auto photometric = text(kPhotometric);
      photometric && *photometric != "MONOCHROME1" && *photometric != "MONOCHROME2") {
    throw FormatError("DICOM: unsupported photometric interpretation " + *photometric);
  }
  if (auto frames = text(kNumberOfFrames); frames && decimal_value(*frames).value_or(1) > 1) {
    throw FormatError("DICOM: multi-frame images are not supported");
  }

  DicomImage image;
  auto& meta = image.meta;
  const auto rows = us(kRows);
  const auto cols = us(kColumns);
  if (!rows || !cols || *rows == 0 || *cols == 0) throw MetadataError("DICOM: missing rows/columns");
  meta.rows = *rows;
  meta.cols = *cols;
  meta.bits_allocated = us(kBitsAllocated).value_or(16);
  meta.bits_stored = us(kBitsStored).value_or(static_cast<std::uint16_t>(meta.bits_allocated));
  meta.signed_pixels = us(kPixelRepresentation).value_or(0) == 1;
  if (meta.bits_allocated != 8 && meta.bits_allocated != 16) {
    throw FormatError("DICOM: unsupported bits allocated " + std::to_string(meta.bits_allocated));
  }
  if (meta.bits_stored < 1 || meta.bits_stored > meta.bits_allocated) {
    throw MetadataError("DICOM: bits stored out of range");
  }

  const auto slope_text = text(kRescaleSlope);
  const auto intercept_text = text(kRescaleIntercept);
  if (!slope_text || !intercept_text) throw MetadataError("DICOM: missing rescale slope/intercept");
  const auto slope = decimal_value(*slope_text);
  const auto intercept = decimal_value(*intercept_text);
  if (!slope || !intercept) throw MetadataError("DICOM: unparseable rescale slope/intercept");
  if (*slope == 0.0) throw MetadataError("DICOM: rescale slope is zero");
  meta.rescale_slope = *slope;
  meta.rescale_intercept = *intercept;

  if (auto spacing = text(kPixelSpacing)) {
    const auto row = decimal_value(*spacing, 0);
    const auto col = decimal_value(*spacing, 1);
    if (row && col && *row > 0.0 && *col > 0.0) meta.spacing = {*row, *col};
  }

  const auto pixels = found.find(kPixelData);
  if (pixels == found.end()) throw FormatError("DICOM: no pixel data");
  const std::size_t count = meta.rows * meta.cols;
  const std::size_t bytes_per = static_cast<std::size_t>(meta.bits_allocated / 8);
  if (pixels->second.size() < count * bytes_per) throw TruncatedError("DICOM: pixel data truncated");

  const std::uint32_t mask =
      meta.bits_stored >= 32 ? 0xFFFFFFFFu : ((std::uint32_t{1} << meta.bits_stored) - 1u);
  const std::uint32_t sign_bit = std::uint32_t{1} << (meta.bits_stored - 1);
  image.stored.resize(count);
  const std::uint8_t* p = pixels->second.data();
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t raw = bytes_per == 2 ? (std::uint32_t{p[2 * i]} | (std::uint32_t{p[2 * i + 1]} << 8))
                                       : std::uint32_t{p[i]};
    raw &= mask;
    std::int32_t v = static_cast<std::int32_t>(raw);
    if (meta.signed_pixels && (raw & sign_bit)) v -= static_cast<std::int32_t>(mask) + 1;
    image.stored[i] = v;
  }
  return image;
}

DicomImage read_dicom(const std::filesystem::path& path) { return read_dicom(read_file(path)); }

HuSlice to_hu_slice(const DicomImage& image) {
  std::vector<double> hu(image.stored.size());
  for (std::size_t i = 0; i < hu.size(); ++i) hu[i] = rescale_to_hu(image.stored[i], image.meta);
  HuSlice slice;
  slice.values = Grid(image.meta.cols, image.meta.rows, std::move(hu));
  slice.spacing = image.meta.spacing;
  return slice;
}

HuSlice load_dicom_slice(const std::filesystem::path& path) {
  HuSlice slice = to_hu_slice(read_dicom(path));
  slice.source_id = path.filename().string();
  return slice;
}

}  // namespace ctc
