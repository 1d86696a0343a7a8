#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "fvc/geometry.hpp"
#include "fvc/image.hpp"

namespace fvc {

/// What to paint inside one opening: explicit polygons when given,
/// otherwise a flush block auto-sized to hit `fraction` exactly.
struct SegmentVegetation {
  double fraction = 0.0;
  std::vector<Polygon> polygons;
};

struct SceneSpec {
  Index width = 1024;
  Index height = 768;
  int n_segments = 1;
  /// Cool near-white; keeps the frame hue inside the default detection
  /// range, which a pure achromatic gray (hue 0) would miss.
  Eigen::Vector3i frame_color{225, 235, 245};
  /// Saturated warm brown. Chosen so a 50/50 soil-vegetation blend sits
  /// right on the greenness hue threshold: superpixels straddling a
  /// planting boundary then split evenly instead of leaning green, which
  /// a duller brown would let them do.
  Eigen::Vector3i background{135, 65, 30};
  Eigen::Vector3i vegetation_color{60, 150, 70};
  int bar_width = 16;  ///< px, >= 3
  double noise_amplitude = 12.0;
  double frame_w_frac = 0.66;  ///< frame outer width / image width
  double frame_h_frac = 0.62;
  std::vector<SegmentVegetation> vegetation;  ///< per segment; short => 0
  double tilt_deg = 0.0;  ///< rotation about the canvas center, degrees
  std::uint64_t seed = 0;  ///< drives only the background speckle
};

/// Integer scene geometry before the pose is applied. Rects are half-open
/// [x0, x1) x [y0, y1).
struct SceneLayout {
  Index frame_x0 = 0, frame_y0 = 0, frame_x1 = 0, frame_y1 = 0;
  struct Rect {
    Index x0, y0, x1, y1;
    Index area() const { return (x1 - x0) * (y1 - y0); }
  };
  std::vector<Rect> openings;  ///< one per segment, top to bottom
};

struct SegmentTruth {
  Index opening_pixels = 0;
  Index vegetation_pixels = 0;
  double fraction = 0.0;
  std::array<Point, 4> quad;  ///< opening corners after the pose, TL first
};

struct GroundTruth {
  std::vector<SegmentTruth> segments;
};

/// Openings stacked top to bottom inside a centered landscape frame; the
/// frame height is trimmed so bars and openings divide it exactly.
SceneLayout scene_layout(const SceneSpec& spec);

/// Rotation by `deg` about (cx, cy) as a homography.
Homography rotation_about_center(double deg, double cx, double cy);

/// Paints background + speckle, frame bars, and vegetation; counts ground
/// truth from the painted (pre-pose) masks, then applies the pose.
/// Identical spec gives identical bytes; the seed moves only the noise.
/// Explicit vegetation polygons are clipped to their opening and the
/// fraction recomputed from what was actually painted. Throws
/// std::invalid_argument on non-positive dimensions, bar_width < 3, or
/// fractions outside [0, 1].
std::pair<Rgb8Image, GroundTruth> render(const SceneSpec& spec);

}  // namespace fvc
