#pragma once

#include <Eigen/Core>

#include "fvc/image.hpp"

namespace fvc {

/// Pixel is white iff every channel lies inside [lo, hi], bounds inclusive.
/// `lo` must be <= `hi` componentwise.
BinaryMask threshold_range(const HsvImage& img, const Eigen::Vector3f& lo,
                           const Eigen::Vector3f& hi);

/// k x k median filter, k odd. Borders are handled by edge replication so
/// the output keeps the input dimensions.
GrayImage median_blur(const GrayImage& img, int k);

/// Keep pixels under white mask values, zero the rest.
Rgb8Image bitwise_and(const Rgb8Image& img, const BinaryMask& mask);
GrayImage bitwise_and(const GrayImage& img, const BinaryMask& mask);

/// Number of white (non-zero) pixels in the mask.
Index count_nonzero(const BinaryMask& mask);

}  // namespace fvc
