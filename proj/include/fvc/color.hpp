#pragma once

#include <Eigen/Core>

#include "fvc/image.hpp"

namespace fvc {

/// RGB -> HSV for a single color, channels as reals in [0,255].
/// Returns (h, s, v) with h in half-degrees [0,180) and s, v in [0,255].
/// Achromatic inputs map to h = 0, s = 0.
Eigen::Vector3f hsv_from_rgb(float r, float g, float b);

/// sRGB -> CIELAB for a single 8-bit color (D65 white, 2 degree observer).
/// L is clamped to [0,100].
Eigen::Vector3f lab_from_srgb(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Whole-image RGB -> HSV in the half-degree convention, so the frame
/// threshold constants (70,0,110)/(180,255,255) apply directly.
HsvImage rgb_to_hsv(const Rgb8Image& img);

/// Whole-image sRGB -> CIELAB: sRGB -> linear RGB -> XYZ (D65) -> Lab.
LabImage rgb_to_lab(const Rgb8Image& img);

}  // namespace fvc
