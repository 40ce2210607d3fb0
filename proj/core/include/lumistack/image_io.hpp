#pragma once

#include <filesystem>

#include "lumistack/image.hpp"

namespace lumistack {

/// Reads an 8-bit PNG or baseline JPEG (detected by signature, not by
/// extension). Grayscale sources are replicated to three channels and any
/// alpha channel is dropped. 16-bit and CMYK inputs raise FormatError.
RgbImage load_image(const std::filesystem::path& path);

/// Single-channel view of a file: grayscale files as stored, colour files by
/// their per-pixel maximum channel.
GrayImage load_gray(const std::filesystem::path& path);

void save_rgb_png(const RgbImage& img, const std::filesystem::path& path);
void save_gray_png(const GrayImage& img, const std::filesystem::path& path);

/// Min-max scales the plane to [0, 255] and writes an 8-bit grayscale PNG.
/// A constant plane is written as all zeros.
void save_plane_png(const PlaneImage& plane, const std::filesystem::path& path);

void save_rgb_jpeg(const RgbImage& img, const std::filesystem::path& path, int quality = 90);

/// The 8-bit image that save_plane_png would write.
GrayImage plane_to_gray(const PlaneImage& plane);

}  // namespace lumistack
