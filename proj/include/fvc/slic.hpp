#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "fvc/image.hpp"

namespace fvc {

struct SlicParams {
  int k = 300;          ///< target superpixel count
  double m = 10.0;      ///< compactness weight
  int max_iters = 10;
  double residual_eps = 1.0;  ///< mean center motion (px) to call converged
};

/// K-means center in the joint [L, A, B, X, Y] space.
struct ClusterCenter {
  double l = 0.0, a = 0.0, b = 0.0;
  double x = 0.0, y = 0.0;
};

struct SuperpixelLabeling {
  using LabelPlane =
      Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic,
                   Eigen::RowMajor>;
  LabelPlane labels;  ///< (y, x) indexed, values in [0, n_labels)
  int n_labels = 0;
  std::vector<ClusterCenter> centers;  ///< one per label
};

/// Per-iteration energy bookkeeping: total assignment distance summed over
/// pixels, sampled immediately before and after each assignment sweep
/// (under that sweep's centers). `before` is NaN on the first iteration,
/// which has no previous assignment to measure.
struct SlicIteration {
  double energy_before = 0.0;
  double energy_after = 0.0;
  double center_motion = 0.0;  ///< mean spatial displacement after update
};

struct SlicDiagnostics {
  std::vector<SlicIteration> iterations;
};

/// Grid interval S = sqrt(N / K). Throws std::invalid_argument unless
/// 1 <= k <= n_pixels.
double grid_interval(Index n_pixels, int k);

/// Squared-central-difference color gradient
/// G = |I(x+1,y) - I(x-1,y)|^2 + |I(x,y+1) - I(x,y-1)|^2 with coordinates
/// clamped at the borders.
double gradient(const LabImage& img, Index x, Index y);

/// Evenly spaced seed grid (about k centers), each nudged to the lowest
/// gradient position in its 3x3 neighborhood; ties keep the original
/// position, then the first in row-major order.
std::vector<ClusterCenter> init_centers(const LabImage& img, int k);

/// D_s = D_lab + (m / S) * D_xy with plain (non-squared) Euclidean norms.
double slic_distance(const ClusterCenter& c, double l, double a, double b,
                     double x, double y, double m, double s);

/// Windowed K-means over [L,A,B,X,Y]: each sweep assigns pixels to the
/// nearest center among those whose 2Sx2S window covers them (each pixel's
/// previous center always stays a candidate, so a sweep can only lower the
/// total energy and no pixel is ever left unlabeled), then centers move to
/// their cluster means. Stops when mean center motion drops below
/// residual_eps or after max_iters, then 4-connectivity is enforced.
/// Deterministic for fixed input and params.
SuperpixelLabeling segment(const LabImage& img, const SlicParams& params,
                           SlicDiagnostics* diag = nullptr);

/// Splits disconnected label regions and absorbs components smaller than
/// (N / n_labels) / 4 pixels into their largest adjacent component. Labels
/// are compacted to scan order and centers recomputed, so afterwards every
/// label is one 4-connected region with at least one pixel.
void enforce_connectivity(const LabImage& img, SuperpixelLabeling& labeling);

}  // namespace fvc
