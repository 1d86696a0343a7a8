#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <vector>

#include "fvc/image.hpp"

namespace fvc {

using Point = Eigen::Vector2d;

/// Undirected segment between two distinct points.
struct LineSegment {
  Point p0;
  Point p1;

  Point midpoint() const { return 0.5 * (p0 + p1); }
  Point direction() const { return p1 - p0; }
  double length() const { return (p1 - p0).norm(); }
};

/// Line in normal form: rho = x*cos(theta) + y*sin(theta).
/// Convention: theta in [0, pi), rho signed.
struct PolarLine {
  double rho = 0.0;
  double theta = 0.0;
};

/// Simple polygon; the vertex list is implicitly closed.
struct Polygon {
  std::vector<Point> vertices;

  /// Signed shoelace area; positive for counterclockwise vertex order
  /// (in raw (x, y) coordinates).
  double signed_area() const;
  double area() const;
};

struct RotatedRect {
  Point center = Point::Zero();
  double width = 0.0;   // extent along the angle direction
  double height = 0.0;  // extent along the perpendicular
  double angle = 0.0;   // radians, normalized to [0, pi/2)

  /// Corners in order TL, TR, BR, BL of the rect's own frame.
  std::array<Point, 4> corners() const;
  double area() const { return width * height; }
};

/// 3x3 projective map, normalized so h(2,2) = 1 where representable.
using Homography = Eigen::Matrix3d;

/// Apply H to a point (projective division included).
Point apply_homography(const Homography& h, const Point& p);

/// Angle of the undirected line through the segment, in [0, pi).
double segment_angle(const LineSegment& s);

/// Normal-form parameters of the segment's supporting line.
PolarLine polar_from_segment(const LineSegment& s);

/// Distance from a point to the segment's supporting (infinite) line.
double point_line_distance(const Point& p, const LineSegment& s);

/// Exact DLT homography from 4 point correspondences. Throws
/// std::invalid_argument when any three source or destination points are
/// collinear. The correspondences are reproduced to about 1e-6.
Homography solve_homography(const std::array<Point, 4>& src,
                            const std::array<Point, 4>& dst);

/// Inverse-map warp with bilinear sampling; source samples falling outside
/// the input are black. Throws std::invalid_argument when H is singular.
Rgb8Image warp_perspective(const Rgb8Image& img, const Homography& h,
                           Index out_w, Index out_h);

/// Counterclockwise convex hull (positive shoelace orientation), collinear
/// interior points dropped. Throws std::invalid_argument when fewer than
/// three distinct points remain or all points are collinear.
Polygon convex_hull(const std::vector<Point>& points);

/// Smallest-area enclosing rectangle: convex hull followed by a caliper
/// sweep over hull-edge orientations. One side of the result is collinear
/// with a hull edge. Throws std::invalid_argument on degenerate input.
RotatedRect min_area_rect(const std::vector<Point>& points);

/// Intersection of the supporting lines; std::nullopt when the (normalized)
/// direction cross product falls below 1e-9.
std::optional<Point> intersect_lines(const LineSegment& a,
                                     const LineSegment& b);

/// Scale the segment about its midpoint; factor must be >= 1.
LineSegment extend_segment(const LineSegment& s, double factor);

/// Scanline fill: a pixel is white iff its center (x+0.5, y+0.5) is inside
/// the polygon under the even-odd rule, clipped to [0,w) x [0,h). Throws
/// std::invalid_argument for polygons with fewer than 3 vertices or with
/// self-intersections.
BinaryMask rasterize_polygon(const Polygon& poly, Index w, Index h);

}  // namespace fvc
