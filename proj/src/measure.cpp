#include "fvc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fvc/errors.hpp"
#include "fvc/raster.hpp"

namespace fvc {

double coverage_percent(const BinaryMask& veg, const BinaryMask& seg) {
  if (!same_size(veg, seg)) {
    throw std::invalid_argument("coverage_percent: mask dimensions differ");
  }
  const Index seg_px = count_nonzero(seg);
  if (seg_px == 0) {
    throw EmptySegment("segment polygon covers no pixels");
  }
  const Index veg_px = count_nonzero(bitwise_and(veg, seg));
  return 100.0 * static_cast<double>(veg_px) / static_cast<double>(seg_px);
}

double metric_area(Index veg_px, Index polygon_px, const FrameSpec& spec) {
  if (polygon_px <= 0) {
    throw std::invalid_argument("metric_area: polygon has no pixels");
  }
  if (veg_px < 0 || veg_px > polygon_px) {
    throw std::invalid_argument(
        "metric_area: vegetation pixels exceed polygon pixels");
  }
  return spec.inner_area_sq_in() * static_cast<double>(veg_px) /
         static_cast<double>(polygon_px);
}

int daubenmire_class(double percent) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw std::invalid_argument("daubenmire_class: percent outside [0, 100]");
  }
  if (percent < 5.0) return 1;
  if (percent < 25.0) return 2;
  if (percent < 50.0) return 3;
  if (percent < 75.0) return 4;
  if (percent < 95.0) return 5;
  return 6;
}

int braun_blanquet_class(double percent) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw std::invalid_argument(
        "braun_blanquet_class: percent outside [0, 100]");
  }
  if (percent < 5.0) return 1;
  if (percent < 25.0) return 2;
  if (percent < 50.0) return 3;
  if (percent < 75.0) return 4;
  return 5;
}

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine_similarity: length mismatch");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("cosine_similarity: zero vector");
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

CoverReport make_report(int segment_index, const BinaryMask& veg,
                        const BinaryMask& seg, const FrameSpec& spec) {
  CoverReport r;
  r.segment_index = segment_index;
  r.polygon_pixels = count_nonzero(seg);
  r.vegetation_pixels = count_nonzero(bitwise_and(veg, seg));
  r.percent = coverage_percent(veg, seg);
  r.area_sq_in = metric_area(r.vegetation_pixels, r.polygon_pixels, spec);
  r.area_sq_cm = r.area_sq_in * kSqCmPerSqIn;
  r.daubenmire_class = daubenmire_class(r.percent);
  return r;
}

}  // namespace fvc
