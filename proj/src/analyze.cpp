#include "fvc/analyze.hpp"

#include "fvc/color.hpp"
#include "fvc/edges.hpp"

namespace fvc {

AnalysisResult analyze_image(const Rgb8Image& img,
                             const PipelineConfig& config) {
  AnalysisResult r;
  r.frame = extract_frame(img, config.hsv, config.frame);
  const Rgb8Image& rectified = r.frame.rectified;

  const LabImage lab = rgb_to_lab(rectified);
  r.labeling = segment(lab, config.slic);
  r.vegetation = vegetation_mask(rectified, r.labeling, config.green);

  const EdgeMap edges =
      canny(r.frame.frame_mask, config.frame.canny_low,
            config.frame.canny_high);
  const std::vector<LineSegment> raw = hough_lines(edges, config.hough);
  r.lines = merge_lines(raw);
  // Walked segments locate each bar edge to the nearest pixel; the mask
  // still knows the boundary half a pixel better than that.
  for (LineSegment& s : r.lines) {
    s = snap_to_boundary(s, r.frame.frame_mask);
  }

  std::vector<LineSegment> extended;
  extended.reserve(r.lines.size());
  for (const LineSegment& s : r.lines) {
    extended.push_back(extend_segment(s, config.extend_factor));
  }

  const std::vector<SegmentLines> bands = assign_lines(
      extended, static_cast<double>(rectified.width()),
      static_cast<double>(rectified.height()),
      config.frame_spec.n_segments);
  for (const SegmentLines& band : bands) {
    r.quads.push_back(inner_quad(band));
  }
  r.segment_masks =
      segment_masks(r.quads, rectified.width(), rectified.height());

  for (std::size_t i = 0; i < r.segment_masks.size(); ++i) {
    r.reports.push_back(make_report(static_cast<int>(i), r.vegetation,
                                    r.segment_masks[i], config.frame_spec));
  }
  return r;
}

}  // namespace fvc
