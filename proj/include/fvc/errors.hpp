#pragma once

#include <stdexcept>
#include <string>

namespace fvc {

/// Base class for pipeline-stage failures. Each concrete failure maps to a
/// distinct CLI exit code; everything else (I/O, bad arguments) stays on the
/// standard exception hierarchy.
struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No frame-colored region survives thresholding, or the best candidate is
/// too small to be a frame. CLI exit code 2.
struct NoFrameFound : PipelineError {
  using PipelineError::PipelineError;
};

/// The frame contour collapsed to a line, so no rectangle can be fitted.
/// Treated as a frame-detection failure (exit code 2).
struct DegenerateRect : NoFrameFound {
  using NoFrameFound::NoFrameFound;
};

/// The Hough vote schedule reached its floor without a single line. Exit 3.
struct NoLinesFound : PipelineError {
  using PipelineError::PipelineError;
};

/// A frame segment lacks the two horizontal and two vertical lines needed to
/// bound its inner opening. Exit 4.
struct InsufficientLines : PipelineError {
  using PipelineError::PipelineError;
};

/// The selected inner lines do not intersect in four points.
struct ParallelInnerLines : InsufficientLines {
  using InsufficientLines::InsufficientLines;
};

/// A segment mask with zero pixels cannot yield a coverage ratio.
struct EmptySegment : PipelineError {
  using PipelineError::PipelineError;
};

/// Image decode/encode failure. CLI exit code 1.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fvc
