#pragma once

#include <vector>

#include "fvc/frame_extract.hpp"
#include "fvc/gridlines.hpp"
#include "fvc/image.hpp"
#include "fvc/measure.hpp"
#include "fvc/slic.hpp"
#include "fvc/vegetation.hpp"

namespace fvc {

/// Every tunable of the end-to-end pipeline, defaulted to the published
/// constants.
struct PipelineConfig {
  HsvRange hsv;
  FrameExtractParams frame;
  SlicParams slic;
  GreenCriterion green;
  HoughParams hough;
  FrameSpec frame_spec;
  double extend_factor = 5.0;  ///< line extension before intersecting
};

/// Everything the pipeline produced for one image, kept around so callers
/// can write overlays or dig into intermediate stages.
struct AnalysisResult {
  FrameExtraction frame;
  SuperpixelLabeling labeling;
  BinaryMask vegetation;
  std::vector<LineSegment> lines;  ///< after merging, rectified coords
  std::vector<SegmentPolygon> quads;
  std::vector<BinaryMask> segment_masks;
  std::vector<CoverReport> reports;
};

/// Runs frame extraction, superpixel clustering, vegetation
/// classification, gridline detection, and per-segment measurement.
/// Propagates NoFrameFound / NoLinesFound / InsufficientLines.
AnalysisResult analyze_image(const Rgb8Image& img,
                             const PipelineConfig& config);

}  // namespace fvc
