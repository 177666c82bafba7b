#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ctcompand/core.hpp"

namespace ctc {

struct DicomSliceMeta {
  double rescale_slope = 1.0;
  double rescale_intercept = 0.0;
  PixelSpacing spacing;
  std::size_t rows = 0;
  std::size_t cols = 0;
  int bits_allocated = 16;
  int bits_stored = 16;
  bool signed_pixels = false;
};

/// Stored pixel values as decoded from the file, before rescaling.
struct DicomImage {
  DicomSliceMeta meta;
  std::vector<std::int32_t> stored;
};

/// Parse an uncompressed little-endian (implicit or explicit VR) single-frame
/// grayscale DICOM file. Throws FormatError for other transfer syntaxes,
/// multi-frame or color images, MetadataError for missing rescale tags.
DicomImage read_dicom(std::span<const std::uint8_t> bytes);
DicomImage read_dicom(const std::filesystem::path& path);

/// HU = stored * slope + intercept
double rescale_to_hu(std::int32_t stored, const DicomSliceMeta& meta);

HuSlice to_hu_slice(const DicomImage& image);
HuSlice load_dicom_slice(const std::filesystem::path& path);

/// Clamp to [hu_min_clip, hu_max_clip]. Idempotent.
HuSlice clip_metal(const HuSlice& slice, const CompandParams& p);

/// Raw-float layout: "CTCOMPND", u32 width, u32 height (little-endian), then
/// width*height little-endian float32 values, row-major.
inline constexpr char kRawFloatMagic[8] = {'C', 'T', 'C', 'O', 'M', 'P', 'N', 'D'};

HuSlice read_raw_float(std::span<const std::uint8_t> bytes);
HuSlice load_raw_float(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_raw_float(const Grid& values);
void save_raw_float(const std::filesystem::path& path, const Grid& values);

/// Dispatch on content: raw-float magic, otherwise DICOM.
HuSlice load_slice(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace ctc
