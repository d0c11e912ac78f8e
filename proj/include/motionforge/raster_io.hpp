#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "motionforge/types.hpp"

namespace motionforge {

using Bytes = std::vector<std::uint8_t>;

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Bytes& bytes);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Loads a depth raster. Accepts PFM ("Pf", either endianness; rows are
/// flipped to top-left origin) or a 16-bit grayscale PNG whose values are
/// multiplied by `scale`. For PNG input without an explicit scale, a
/// sidecar text file "<path>.scale" holding one number is read.
/// Throws IoError, FormatError or NonPositiveDepthError.
DepthGrid load_depth(const std::filesystem::path& path, std::optional<double> scale = std::nullopt);
DepthGrid decode_depth(const Bytes& bytes, std::optional<double> scale = std::nullopt);

/// Little-endian PFM, bottom-up row order as the format prescribes.
Bytes encode_pfm(const DepthGrid& depth);
void write_pfm(const std::filesystem::path& path, const DepthGrid& depth);

RgbImage decode_png_rgb(const Bytes& bytes);
RgbImage read_png_rgb(const std::filesystem::path& path);
Bytes encode_png_rgb(const RgbImage& image);
void write_png_rgb(const std::filesystem::path& path, const RgbImage& image);

/// 8- or 16-bit grayscale PNG, values taken verbatim as labels / raw units.
Grid<std::uint16_t> decode_png_gray(const Bytes& bytes);
Grid<std::uint16_t> read_png_gray(const std::filesystem::path& path);
Bytes encode_png_gray16(const Grid<std::uint16_t>& grid);
void write_png_gray16(const std::filesystem::path& path, const Grid<std::uint16_t>& grid);

}  // namespace motionforge
