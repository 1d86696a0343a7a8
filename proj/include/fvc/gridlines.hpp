#pragma once

#include <cstdint>
#include <vector>

#include "fvc/edges.hpp"
#include "fvc/geometry.hpp"
#include "fvc/image.hpp"

namespace fvc {

struct HoughParams {
  double rho_res = 1.0;        ///< accumulator rho bin size, px
  double theta_res_deg = 1.0;  ///< accumulator theta bin size, degrees
  int vote_start = 180;        ///< first vote threshold tried
  int vote_step = 10;          ///< lowered by this much while nothing found
  int vote_floor = 50;         ///< last threshold tried before giving up
  double sample_fraction = 0.3;  ///< share of edge pixels that vote
  double min_len = 50.0;         ///< px, shorter segments are dropped
  double max_gap = 10.0;         ///< px, larger breaks split a segment
  std::uint64_t seed = 0;        ///< RNG seed for the voting subset
};

enum class Orientation { Horizontal, Vertical, Other };

/// Lines gathered for one horizontal band of the rectified frame.
struct SegmentLines {
  int segment_index = 0;
  std::vector<LineSegment> horizontals;
  std::vector<LineSegment> verticals;
  double band_y0 = 0.0;  ///< top of the band, px
  double band_y1 = 0.0;  ///< bottom of the band, px
  double width = 0.0;    ///< rectified frame width, px
  /// More than 4 horizontals or 2 verticals survived merging — usually
  /// spurious detections worth a log line, not an error.
  bool over_expected = false;
};

struct SegmentPolygon {
  int segment_index = 0;
  Polygon quad;  ///< 4 vertices, counterclockwise (positive shoelace)
};

/// Probabilistic Hough transform. A seeded random subset of edge pixels
/// votes into a (theta, rho) accumulator (each vote lands in the two rho
/// bins bracketing the exact value, which keeps quantized peaks sharp);
/// starting at vote_start the threshold drops by vote_step until local
/// maxima qualify, whose lines are walked along the full edge map to cut
/// segments obeying min_len / max_gap. Throws NoLinesFound when the floor
/// passes with nothing detected.
std::vector<LineSegment> hough_lines(const EdgeMap& edges,
                                     const HoughParams& p);

/// Within 10 degrees of the x-axis -> Horizontal, of the y-axis ->
/// Vertical, anything else -> Other.
Orientation classify_orientation(const LineSegment& s);

/// Groups segments transitively when their closest approach is under
/// dist_px and orientations differ by under ang_deg; each group keeps
/// only its longest member (earliest on ties). Duplicate detections of
/// one edge overlap and collapse, while collinear segments lying on
/// different stretches of the same line stay apart as long as the gap
/// between them is at least dist_px.
std::vector<LineSegment> merge_lines(const std::vector<LineSegment>& segs,
                                     double dist_px = 10.0,
                                     double ang_deg = 0.2);

/// Slides a detected line onto the sub-pixel boundary it follows in
/// `mask`. Stations along the segment scan the mask within `radius` px of
/// the line along its normal; each clean white/dark transition yields a
/// boundary point, and the segment is refit through those points (total
/// least squares, endpoints reprojected). Stations whose scan window
/// leaves the canvas, sees no transition, or sees the same value at both
/// ends are skipped; the input is returned unchanged when fewer than half
/// the stations report a boundary or the segment is degenerate.
LineSegment snap_to_boundary(const LineSegment& s, const BinaryMask& mask,
                             double radius = 2.5);

/// Buckets lines into n_segments equal horizontal bands of the frame.
/// Verticals join every band their y-span touches; horizontals join the
/// bands whose edge neighborhoods (band boundaries, band_height/4 either
/// way) contain their midline, so boundary bars are shared by adjacent
/// segments. A single-segment frame takes every line. Throws
/// std::invalid_argument when n_segments < 1.
std::vector<SegmentLines> assign_lines(const std::vector<LineSegment>& segs,
                                       double frame_width,
                                       double frame_height, int n_segments);

/// Intersects the innermost line pair of each orientation: the horizontals
/// nearest the band's vertical center from above and below, the verticals
/// nearest the frame's horizontal center from left and right. Vertices
/// ordered counterclockwise starting top-left. Throws InsufficientLines /
/// ParallelInnerLines.
SegmentPolygon inner_quad(const SegmentLines& sl);

/// rasterize_polygon for every quad, same canvas size.
std::vector<BinaryMask> segment_masks(const std::vector<SegmentPolygon>& quads,
                                      Index w, Index h);

}  // namespace fvc
