#pragma once

#include <Eigen/Core>

#include "fvc/geometry.hpp"
#include "fvc/image.hpp"

namespace fvc {

/// Inclusive HSV detection window, in HsvImage channel conventions.
struct HsvRange {
  Eigen::Vector3f lo{70.0f, 0.0f, 110.0f};
  Eigen::Vector3f hi{180.0f, 255.0f, 255.0f};
};

struct FrameExtractParams {
  int median_k = 5;
  double canny_low = 50.0;
  double canny_high = 150.0;
  /// Largest contour must enclose at least this fraction of the image
  /// area, else the detection is treated as speckle.
  double min_area_frac = 0.01;
};

struct FrameExtraction {
  Rgb8Image rectified;     ///< frame warped upright, long side horizontal
  BinaryMask frame_mask;   ///< white = PVC pixels, rectified coordinates
  Homography homography;   ///< source pixels -> rectified pixels
  RotatedRect source_rect; ///< min-area rect of the frame in the source
};

/// Isolates the reference frame and rectifies it: HSV threshold, median
/// blur, Canny, largest contour, min-area rect, masked copy, homography to
/// an axis-aligned rect (top-left first, longer side horizontal), warp,
/// and a final re-threshold of the warped image for the frame mask.
///
/// Throws NoFrameFound when nothing frame-colored is detected (no contours,
/// or the largest encloses under min_area_frac of the image) and
/// DegenerateRect when the detected contour has no area.
FrameExtraction extract_frame(const Rgb8Image& img, const HsvRange& range,
                              const FrameExtractParams& params = {});

}  // namespace fvc
