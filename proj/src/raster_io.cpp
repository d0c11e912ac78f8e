#include "motionforge/raster_io.hpp"

#include <png.h>

#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <sstream>

#include "motionforge/errors.hpp"

namespace motionforge {

namespace fs = std::filesystem;

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file(const fs::path& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_text_file(const fs::path& path, const std::string& text) {
  write_file(path, Bytes(text.begin(), text.end()));
}

// ---------------------------------------------------------------------------
// PFM

namespace {

bool is_pfm(const Bytes& b) { return b.size() >= 2 && b[0] == 'P' && (b[1] == 'f' || b[1] == 'F'); }

bool is_png(const Bytes& b) { return b.size() >= 8 && png_sig_cmp(b.data(), 0, 8) == 0; }

// Reads one whitespace-delimited header token starting at `pos`.
std::string pfm_token(const Bytes& b, std::size_t& pos) {
  while (pos < b.size() && std::isspace(b[pos])) ++pos;
  std::string tok;
  while (pos < b.size() && !std::isspace(b[pos])) tok.push_back(char(b[pos++]));
  return tok;
}

DepthGrid decode_pfm(const Bytes& b) {
  std::size_t pos = 0;
  const std::string magic = pfm_token(b, pos);
  if (magic == "PF") throw FormatError("PFM: colour PFM is not a depth raster");
  if (magic != "Pf") throw FormatError("PFM: bad magic");
  int w = 0, h = 0;
  double scale = 0.0;
  try {
    w = std::stoi(pfm_token(b, pos));
    h = std::stoi(pfm_token(b, pos));
    scale = std::stod(pfm_token(b, pos));
  } catch (const std::exception&) {
    throw FormatError("PFM: malformed header");
  }
  if (w <= 0 || h <= 0 || scale == 0.0) throw FormatError("PFM: malformed header");
  ++pos;  // single whitespace byte ends the header
  const std::size_t count = std::size_t(w) * std::size_t(h);
  if (b.size() < pos + count * 4) throw FormatError("PFM: truncated pixel data");

  const bool little = scale < 0.0;
  const bool swap = little != (std::endian::native == std::endian::little);
  DepthGrid grid(w, h);
  for (int stored_row = 0; stored_row < h; ++stored_row) {
    const int y = h - 1 - stored_row;
    for (int x = 0; x < w; ++x) {
      std::uint8_t raw[4];
      std::memcpy(raw, &b[pos + (std::size_t(stored_row) * std::size_t(w) + std::size_t(x)) * 4], 4);
      if (swap) std::swap(raw[0], raw[3]), std::swap(raw[1], raw[2]);
      float v;
      std::memcpy(&v, raw, 4);
      grid.at(x, y) = v;
    }
  }
  return grid;
}

void check_depth(const DepthGrid& grid) {
  for (float v : grid.data) {
    if (!std::isfinite(v)) throw FormatError("depth raster contains non-finite values");
    if (!(v > 0.0f)) throw NonPositiveDepthError("depth raster contains values <= 0");
  }
}

}  // namespace

Bytes encode_pfm(const DepthGrid& depth) {
  std::ostringstream header;
  header << "Pf\n" << depth.width << ' ' << depth.height << "\n-1.0\n";
  const std::string h = header.str();
  Bytes out(h.begin(), h.end());
  out.reserve(out.size() + depth.data.size() * 4);
  for (int stored_row = 0; stored_row < depth.height; ++stored_row) {
    const int y = depth.height - 1 - stored_row;
    for (int x = 0; x < depth.width; ++x) {
      std::uint8_t raw[4];
      const float v = depth.at(x, y);
      std::memcpy(raw, &v, 4);
      if constexpr (std::endian::native == std::endian::big) std::swap(raw[0], raw[3]), std::swap(raw[1], raw[2]);
      out.insert(out.end(), raw, raw + 4);
    }
  }
  return out;
}

void write_pfm(const fs::path& path, const DepthGrid& depth) { write_file(path, encode_pfm(depth)); }

// ---------------------------------------------------------------------------
// PNG (libpng, setjmp error model kept inside the raw codec functions)

namespace {

struct MemReader {
  const Bytes* bytes;
  std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
  auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
  if (r->pos + len > r->bytes->size()) png_error(png, "truncated PNG stream");
  std::memcpy(out, r->bytes->data() + r->pos, len);
  r->pos += len;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void png_mem_flush(png_structp) {}

void png_silent_warning(png_structp, png_const_charp) {}

enum class PngTarget { Rgb8, Gray };

struct RawImage {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
};

// Returns false on a libpng error; nothing with a non-trivial destructor is
// created between setjmp and the last libpng call.
bool decode_png_raw(const Bytes& bytes, PngTarget target, RawImage& img, bool& bad_color) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_silent_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  MemReader reader{&bytes, 0};
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, &reader, png_mem_read);
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (target == PngTarget::Rgb8) {
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (depth == 16) png_set_strip_16(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  } else {
    if (color != PNG_COLOR_TYPE_GRAY) {
      bad_color = true;
      png_destroy_read_struct(&png, &info, nullptr);
      return false;
    }
    if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  }
  png_read_update_info(png, info);
  img.width = png_get_image_width(png, info);
  img.height = png_get_image_height(png, info);
  img.bit_depth = png_get_bit_depth(png, info);
  img.channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  img.pixels.resize(stride * img.height);
  img.rows.resize(img.height);
  for (png_uint_32 y = 0; y < img.height; ++y) img.rows[y] = img.pixels.data() + stride * y;
  png_read_image(png, img.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

bool encode_png_raw(int width, int height, int bit_depth, int color_type, const std::vector<png_bytep>& rows,
                    Bytes& out) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_silent_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &out, png_mem_write, png_mem_flush);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, png_uint_32(width), png_uint_32(height), bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

RgbImage decode_png_rgb(const Bytes& bytes) {
  if (!is_png(bytes)) throw FormatError("not a PNG stream");
  RawImage raw;
  bool bad_color = false;
  if (!decode_png_raw(bytes, PngTarget::Rgb8, raw, bad_color)) throw FormatError("undecodable PNG");
  RgbImage img(int(raw.width), int(raw.height));
  std::memcpy(img.data.data(), raw.pixels.data(), img.data.size());
  return img;
}

RgbImage read_png_rgb(const fs::path& path) {
  try {
    return decode_png_rgb(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Bytes encode_png_rgb(const RgbImage& image) {
  std::vector<png_bytep> rows(std::size_t(image.height));
  auto* base = const_cast<std::uint8_t*>(image.data.data());
  for (int y = 0; y < image.height; ++y) rows[std::size_t(y)] = base + std::size_t(y) * std::size_t(image.width) * 3;
  Bytes out;
  if (!encode_png_raw(image.width, image.height, 8, PNG_COLOR_TYPE_RGB, rows, out))
    throw IoError("PNG encoding failed");
  return out;
}

void write_png_rgb(const fs::path& path, const RgbImage& image) { write_file(path, encode_png_rgb(image)); }

Grid<std::uint16_t> decode_png_gray(const Bytes& bytes) {
  if (!is_png(bytes)) throw FormatError("not a PNG stream");
  RawImage raw;
  bool bad_color = false;
  if (!decode_png_raw(bytes, PngTarget::Gray, raw, bad_color))
    throw FormatError(bad_color ? "expected a single-channel grayscale PNG" : "undecodable PNG");
  Grid<std::uint16_t> grid(int(raw.width), int(raw.height));
  for (int y = 0; y < grid.height; ++y) {
    const std::uint8_t* row = raw.rows[std::size_t(y)];
    for (int x = 0; x < grid.width; ++x) {
      grid.at(x, y) = raw.bit_depth == 16 ? std::uint16_t((row[2 * x] << 8) | row[2 * x + 1]) : row[x];
    }
  }
  return grid;
}

Grid<std::uint16_t> read_png_gray(const fs::path& path) {
  try {
    return decode_png_gray(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Bytes encode_png_gray16(const Grid<std::uint16_t>& grid) {
  std::vector<std::uint8_t> be(grid.data.size() * 2);
  for (std::size_t i = 0; i < grid.data.size(); ++i) {
    be[2 * i] = std::uint8_t(grid.data[i] >> 8);
    be[2 * i + 1] = std::uint8_t(grid.data[i] & 0xff);
  }
  std::vector<png_bytep> rows(std::size_t(grid.height));
  for (int y = 0; y < grid.height; ++y) rows[std::size_t(y)] = be.data() + std::size_t(y) * std::size_t(grid.width) * 2;
  Bytes out;
  if (!encode_png_raw(grid.width, grid.height, 16, PNG_COLOR_TYPE_GRAY, rows, out))
    throw IoError("PNG encoding failed");
  return out;
}

void write_png_gray16(const fs::path& path, const Grid<std::uint16_t>& grid) {
  write_file(path, encode_png_gray16(grid));
}

// ---------------------------------------------------------------------------
// Depth

DepthGrid decode_depth(const Bytes& bytes, std::optional<double> scale) {
  DepthGrid grid;
  if (is_pfm(bytes)) {
    grid = decode_pfm(bytes);
  } else if (is_png(bytes)) {
    if (!scale) throw FormatError("PNG16 depth requires a scale (meters per unit)");
    if (!(*scale > 0.0) || !std::isfinite(*scale)) throw FormatError("PNG16 depth scale must be positive");
    const auto raw = decode_png_gray(bytes);
    grid = DepthGrid(raw.width, raw.height);
    for (std::size_t i = 0; i < raw.data.size(); ++i) grid.data[i] = float(double(raw.data[i]) * *scale);
  } else {
    throw FormatError("depth raster is neither PFM nor PNG");
  }
  check_depth(grid);
  return grid;
}

DepthGrid load_depth(const fs::path& path, std::optional<double> scale) {
  const Bytes bytes = read_file(path);
  if (is_png(bytes) && !scale) {
    fs::path sidecar = path;
    sidecar += ".scale";
    if (!fs::exists(sidecar)) throw FormatError(path.string() + ": PNG16 depth needs a sidecar " + sidecar.string());
    const Bytes text = read_file(sidecar);
    try {
      scale = std::stod(std::string(text.begin(), text.end()));
    } catch (const std::exception&) {
      throw FormatError(sidecar.string() + ": expected a single number");
    }
  }
  try {
    return decode_depth(bytes, scale);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const NonPositiveDepthError& e) {
    throw NonPositiveDepthError(path.string() + ": " + e.what());
  }
}

}  // namespace motionforge
