#pragma once

#include <vector>

#include "fvc/image.hpp"

namespace fvc {

/// Physical inner dimensions of one frame opening.
struct FrameSpec {
  double inner_width_in = 19.75;
  double inner_height_in = 6.75;
  int n_segments = 1;

  double inner_area_sq_in() const { return inner_width_in * inner_height_in; }
};

struct CoverReport {
  int segment_index = 0;
  Index polygon_pixels = 0;
  Index vegetation_pixels = 0;
  double percent = 0.0;
  double area_sq_in = 0.0;
  double area_sq_cm = 0.0;
  int daubenmire_class = 1;
};

/// 100 * |veg AND seg| / |seg|. Throws EmptySegment when seg has no white
/// pixels, std::invalid_argument on dimension mismatch.
double coverage_percent(const BinaryMask& veg, const BinaryMask& seg);

/// (inner area in sq in) * veg_px / polygon_px. Throws
/// std::invalid_argument when polygon_px is zero or veg_px exceeds it.
double metric_area(Index veg_px, Index polygon_px, const FrameSpec& spec);

constexpr double kSqCmPerSqIn = 6.4516;

/// Six cover classes: [0,5) -> 1, [5,25) -> 2, [25,50) -> 3, [50,75) -> 4,
/// [75,95) -> 5, [95,100] -> 6. Throws std::invalid_argument outside
/// [0, 100].
int daubenmire_class(double percent);

/// Five cover classes: as Daubenmire below 75, then [75,100] -> 5.
int braun_blanquet_class(double percent);

/// (a . b) / (|a| |b|), clamped into [-1, 1]. Throws
/// std::invalid_argument on length mismatch or a zero vector.
double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b);

/// Bundles the arithmetic for one segment's masks.
CoverReport make_report(int segment_index, const BinaryMask& veg,
                        const BinaryMask& seg, const FrameSpec& spec);

}  // namespace fvc
