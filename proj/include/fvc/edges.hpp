#pragma once

#include <Eigen/Core>

#include <vector>

#include "fvc/image.hpp"

namespace fvc {

/// Binary image whose white pixels are edges.
using EdgeMap = BinaryMask;

/// Closed boundary walk of one connected component: consecutive points are
/// 8-adjacent, and so are the first and last.
struct Contour {
  std::vector<Eigen::Vector2i> points;
};

/// Shoelace area of the closed walk through the contour's pixel centers.
double contour_area(const Contour& c);

/// Canny edge detector: Gaussian 5x5 (sigma 1.4) smoothing, Sobel
/// gradients, non-maximum suppression, then hysteresis — pixels with
/// magnitude >= high seed edges, pixels in [low, high) survive only when
/// 8-connected to a seed through other surviving pixels. Throws
/// std::invalid_argument unless 0 <= low <= high <= 255.
EdgeMap canny(const GrayImage& img, double low, double high);

/// Outer boundary of every 8-connected white component, traced clockwise
/// (image coordinates) from its topmost-leftmost pixel; components listed
/// in scan order. Components too small to close a 4-point walk (under 4
/// boundary pixels) are dropped as speckle.
std::vector<Contour> find_contours(const BinaryMask& mask);

/// Contour with the greatest enclosed (shoelace) area; ties keep the
/// earliest in scan order. Throws std::invalid_argument on an empty list.
const Contour& largest_contour(const std::vector<Contour>& cs);

}  // namespace fvc
