#include "fvc/frame_extract.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fvc/color.hpp"
#include "fvc/edges.hpp"
#include "fvc/errors.hpp"
#include "fvc/raster.hpp"

namespace fvc {

namespace {

// Rect corners ordered TL, TR, BR, BL with the longer side running along
// +x, so downstream line classification sees a landscape frame.
std::array<Point, 4> oriented_corners(const RotatedRect& rect) {
  double long_len = rect.width;
  double short_len = rect.height;
  Point dl(std::cos(rect.angle), std::sin(rect.angle));
  if (short_len > long_len) {
    std::swap(long_len, short_len);
    dl = Point(-dl.y(), dl.x());  // longer side runs perpendicular
  }
  if (dl.x() < 0.0 || (dl.x() == 0.0 && dl.y() < 0.0)) dl = -dl;
  const Point ds(-dl.y(), dl.x());  // screen-down for a landscape dl

  const Point du = 0.5 * long_len * dl;
  const Point dv = 0.5 * short_len * ds;
  return {rect.center - du - dv, rect.center + du - dv,
          rect.center + du + dv, rect.center - du + dv};
}

}  // namespace

FrameExtraction extract_frame(const Rgb8Image& img, const HsvRange& range,
                              const FrameExtractParams& params) {
  const HsvImage hsv = rgb_to_hsv(img);
  const BinaryMask raw_mask = threshold_range(hsv, range.lo, range.hi);
  const BinaryMask blurred = median_blur(raw_mask, params.median_k);
  const EdgeMap edge_map = canny(blurred, params.canny_low, params.canny_high);

  const std::vector<Contour> contours = find_contours(edge_map);
  if (contours.empty()) {
    throw NoFrameFound("no frame-colored contours detected");
  }
  const Contour& outline = largest_contour(contours);
  const double image_area =
      static_cast<double>(img.width()) * static_cast<double>(img.height());
  if (contour_area(outline) < params.min_area_frac * image_area) {
    throw NoFrameFound("largest contour is too small to be the frame");
  }

  std::vector<Point> pts;
  pts.reserve(outline.points.size());
  for (const Eigen::Vector2i& p : outline.points) {
    pts.emplace_back(static_cast<double>(p.x()), static_cast<double>(p.y()));
  }
  RotatedRect rect;
  try {
    rect = min_area_rect(pts);
  } catch (const std::invalid_argument&) {
    throw DegenerateRect("frame contour is degenerate");
  }

  const std::array<Point, 4> src = oriented_corners(rect);
  const double long_len = std::max(rect.width, rect.height);
  const double short_len = std::min(rect.width, rect.height);
  const Index out_w = std::max<Index>(2, std::lround(long_len));
  const Index out_h = std::max<Index>(2, std::lround(short_len));
  const std::array<Point, 4> dst = {
      Point(0, 0), Point(out_w - 1, 0), Point(out_w - 1, out_h - 1),
      Point(0, out_h - 1)};

  const Homography h = solve_homography(src, dst);

  Polygon rect_poly;
  rect_poly.vertices.assign(src.begin(), src.end());
  const BinaryMask rect_mask =
      rasterize_polygon(rect_poly, img.width(), img.height());
  const Rgb8Image masked = bitwise_and(img, rect_mask);

  FrameExtraction out;
  out.rectified = warp_perspective(masked, h, out_w, out_h);
  out.frame_mask =
      threshold_range(rgb_to_hsv(out.rectified), range.lo, range.hi);
  out.homography = h;
  out.source_rect = rect;
  return out;
}

}  // namespace fvc
