#include "lumistack/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

// jpeglib.h needs FILE and size_t declared first.
#include <jpeglib.h>

namespace lumistack {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail(const fs::path& path, const std::string& what) {
  throw FormatError(path.string() + ": " + what);
}

enum class Container { Png, Jpeg, Unknown };

Container sniff(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  std::array<unsigned char, 8> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  static constexpr std::array<unsigned char, 8> kPngSig = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (got == 8 && head == kPngSig) return Container::Png;
  if (got >= 3 && head[0] == 0xFF && head[1] == 0xD8 && head[2] == 0xFF) return Container::Jpeg;
  return Container::Unknown;
}

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) fail(path, mode[0] == 'r' ? "cannot open file" : "cannot create file");
  return f;
}

RgbImage read_png(const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    fail(path, std::string("PNG decode failed: ") + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    fail(path, "unsupported bit depth (16-bit PNG)");
  }
  if (image.width < 1 || image.height < 1 || image.width > 1u << 20 || image.height > 1u << 20) {
    png_image_free(&image);
    fail(path, "unsupported PNG dimensions");
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    png_image_free(&image);
    fail(path, std::string("PNG decode failed: ") + image.message);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  RgbImage out(w, h);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
  }
  return out;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void jpeg_silent(j_common_ptr, int) {}

// Decodes into a caller-owned buffer; returns an empty string on success or
// an error message. Kept free of C++ objects with destructors across setjmp.
std::string decode_jpeg(std::FILE* file, std::vector<unsigned char>& pixels, int& width,
                        int& height, int& components) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager jerr;
  cinfo.err = jpeg_std_error(&jerr.base);
  jerr.base.error_exit = jpeg_error_exit;
  jerr.base.emit_message = jpeg_silent;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    return jerr.message;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file);
  jpeg_read_header(&cinfo, TRUE);
  if (cinfo.jpeg_color_space == JCS_CMYK || cinfo.jpeg_color_space == JCS_YCCK) {
    jpeg_destroy_decompress(&cinfo);
    return "unsupported colour space (CMYK JPEG)";
  }
  if (cinfo.data_precision != 8) {
    jpeg_destroy_decompress(&cinfo);
    return "unsupported bit depth";
  }
  cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  components = cinfo.output_components;
  const std::size_t stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(components);
  pixels.resize(stride * static_cast<std::size_t>(height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels.data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return {};
}

RgbImage read_jpeg(const fs::path& path) {
  auto file = open_file(path, "rb");
  std::vector<unsigned char> pixels;
  int w = 0, h = 0, c = 0;
  if (auto err = decode_jpeg(file.get(), pixels, w, h, c); !err.empty()) {
    fail(path, "JPEG decode failed: " + err);
  }
  if (w < 1 || h < 1 || (c != 1 && c != 3)) fail(path, "unsupported JPEG layout");
  RgbImage out(w, h);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (c == 1) {
      out[i] = {pixels[i], pixels[i], pixels[i]};
    } else {
      out[i] = {pixels[3 * i], pixels[3 * i + 1], pixels[3 * i + 2]};
    }
  }
  return out;
}

void write_png(const fs::path& path, const void* data, int width, int height, png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
    fail(path, std::string("PNG encode failed: ") + image.message);
  }
}

std::string encode_jpeg(std::FILE* file, const unsigned char* pixels, int width, int height,
                        int quality) {
  jpeg_compress_struct cinfo;
  JpegErrorManager jerr;
  cinfo.err = jpeg_std_error(&jerr.base);
  jerr.base.error_exit = jpeg_error_exit;
  jerr.base.emit_message = jpeg_silent;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_compress(&cinfo);
    return jerr.message;
  }
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, file);
  cinfo.image_width = static_cast<JDIMENSION>(width);
  cinfo.image_height = static_cast<JDIMENSION>(height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const std::size_t stride = static_cast<std::size_t>(width) * 3;
  while (cinfo.next_scanline < cinfo.image_height) {
    auto* row = const_cast<JSAMPROW>(pixels + stride * cinfo.next_scanline);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return {};
}

}  // namespace

RgbImage load_image(const fs::path& path) {
  switch (sniff(path)) {
    case Container::Png: return read_png(path);
    case Container::Jpeg: return read_jpeg(path);
    default: fail(path, "not a PNG or JPEG file");
  }
}

GrayImage load_gray(const fs::path& path) {
  const RgbImage rgb = load_image(path);
  return map_pixels(rgb, [](const Rgb8& px) { return std::max({px[0], px[1], px[2]}); });
}

void save_rgb_png(const RgbImage& img, const fs::path& path) {
  std::vector<unsigned char> buffer;
  buffer.reserve(img.size() * 3);
  for (const auto& px : img) buffer.insert(buffer.end(), px.begin(), px.end());
  write_png(path, buffer.data(), img.width(), img.height(), PNG_FORMAT_RGB);
}

void save_gray_png(const GrayImage& img, const fs::path& path) {
  write_png(path, img.pixels().data(), img.width(), img.height(), PNG_FORMAT_GRAY);
}

GrayImage plane_to_gray(const PlaneImage& plane) {
  const PlaneImage unit = normalize_minmax(plane);
  return map_pixels(unit, [](double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * kMaxLevel));
  });
}

void save_plane_png(const PlaneImage& plane, const fs::path& path) {
  save_gray_png(plane_to_gray(plane), path);
}

void save_rgb_jpeg(const RgbImage& img, const fs::path& path, int quality) {
  if (quality < 1 || quality > 100) throw InvalidArgument("JPEG quality must be in [1, 100]");
  std::vector<unsigned char> buffer;
  buffer.reserve(img.size() * 3);
  for (const auto& px : img) buffer.insert(buffer.end(), px.begin(), px.end());
  auto file = open_file(path, "wb");
  if (auto err = encode_jpeg(file.get(), buffer.data(), img.width(), img.height(), quality);
      !err.empty()) {
    fail(path, "JPEG encode failed: " + err);
  }
}

}  // namespace lumistack
