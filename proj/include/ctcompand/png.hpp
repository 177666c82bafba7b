#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ctcompand/core.hpp"

namespace ctc {

/// Non-interlaced grayscale PNG at the image's bit depth (8 or 16).
std::vector<std::uint8_t> encode_png(const LdrImage& image);
void write_png(const std::filesystem::path& path, const LdrImage& image);

/// Reads 8- or 16-bit grayscale PNGs, as written by encode_png.
LdrImage decode_png(std::span<const std::uint8_t> bytes);

}  // namespace ctc
