#pragma once

#include <Eigen/Core>

#include <vector>

#include "fvc/image.hpp"
#include "fvc/slic.hpp"

namespace fvc {

/// Rule deciding whether a mean superpixel color counts as plant matter.
struct GreenCriterion {
  enum class Mode { HueWindow, ExcessGreen };
  Mode mode = Mode::HueWindow;
  float hue_lo = 35.0f;  ///< HsvImage half-degree units
  float hue_hi = 85.0f;
  /// Low enough that plant matter washed toward white - a sunlit leaf, or
  /// a superpixel sharing its area with the frame - still reads as green;
  /// the frame itself stays far below at s ~ 20.
  float s_min = 40.0f;
  float v_min = 40.0f;
  float exg_threshold = 20.0f;  ///< for the 2G - R - B mode
};

/// Arithmetic mean RGB per label, channels in [0, 255]. Throws
/// std::invalid_argument when image and labeling dimensions differ.
std::vector<Eigen::Vector3d> mean_superpixel_color(
    const Rgb8Image& img, const SuperpixelLabeling& labeling);

/// HueWindow: hue inside [hue_lo, hue_hi] with saturation and value at
/// least s_min / v_min. ExcessGreen: 2G - R - B strictly above the
/// threshold.
bool is_green(const Eigen::Vector3d& rgb, const GreenCriterion& c);

/// White wherever the pixel's superpixel has a green mean color.
BinaryMask vegetation_mask(const Rgb8Image& img,
                           const SuperpixelLabeling& labeling,
                           const GreenCriterion& c);

/// Diagnostic composite: the image with non-vegetation blacked out.
Rgb8Image vegetation_overlay(const Rgb8Image& img, const BinaryMask& mask);

}  // namespace fvc
