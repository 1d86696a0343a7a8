#pragma once

#include <string>

#include "fvc/image.hpp"

namespace fvc {

/// Reads a PNG or JPEG (sniffed from the file's magic bytes, not its
/// name) as 8-bit RGB; grayscale and alpha inputs are expanded/flattened.
/// Throws IoError on missing files, unsupported formats, or decode
/// failures.
Rgb8Image load_image(const std::string& path);

/// Writes 8-bit RGB PNG. Throws IoError when the file cannot be written.
void save_png(const std::string& path, const Rgb8Image& img);

/// Writes a single-channel 8-bit PNG. Throws IoError on failure.
void save_png(const std::string& path, const GrayImage& img);

}  // namespace fvc
