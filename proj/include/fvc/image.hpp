#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <stdexcept>

namespace fvc {

using Index = Eigen::Index;

/// Dense raster buffer: `Channels` planes of height x width scalars.
///
/// Each plane is a row-major Eigen array indexed (row, col) = (y, x); the
/// `at(x, y, c)` accessors take pixel coordinates in the usual image order.
/// Images are plain values: copyable, movable, safe to hand between threads.
///
/// The optional `Tag` parameter distinguishes buffers that share a scalar
/// layout but carry different color semantics (HSV vs CIELAB).
template <typename Scalar, int Channels = 1, typename Tag = void>
class Image {
  static_assert(Channels >= 1, "Image needs at least one channel");

 public:
  using Plane =
      Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Image() = default;

  Image(Index width, Index height) {
    if (width < 1 || height < 1) {
      throw std::invalid_argument("Image: width and height must be >= 1");
    }
    for (auto& p : planes_) {
      p = Plane::Zero(height, width);
    }
  }

  static constexpr int channels() { return Channels; }
  Index width() const { return planes_[0].cols(); }
  Index height() const { return planes_[0].rows(); }
  Index pixel_count() const { return width() * height(); }
  bool empty() const { return planes_[0].size() == 0; }

  Plane& plane(int c) { return planes_.at(static_cast<std::size_t>(c)); }
  const Plane& plane(int c) const {
    return planes_.at(static_cast<std::size_t>(c));
  }

  Scalar& at(Index x, Index y, int c = 0) { return planes_[c](y, x); }
  Scalar at(Index x, Index y, int c = 0) const { return planes_[c](y, x); }

  bool in_bounds(Index x, Index y) const {
    return x >= 0 && x < width() && y >= 0 && y < height();
  }

 private:
  std::array<Plane, Channels> planes_{};
};

template <typename SA, int CA, typename TA, typename SB, int CB, typename TB>
bool same_size(const Image<SA, CA, TA>& a, const Image<SB, CB, TB>& b) {
  return a.width() == b.width() && a.height() == b.height();
}

/// 8-bit planar RGB: plane 0 = R, 1 = G, 2 = B, each 0..255.
using Rgb8Image = Image<std::uint8_t, 3>;

/// Grayscale intensities 0..255.
using GrayImage = Image<std::uint8_t, 1>;

/// Mask over an image: every pixel is 0 (black) or 255 (white).
/// Shares the GrayImage representation; a mask is a grayscale image.
using BinaryMask = GrayImage;

/// HSV planes in the half-degree convention: h in [0,180] (half degrees),
/// s and v in [0,255]. Stored as float so thresholds stay exact while the
/// round trip back to RGB loses nothing to re-quantization.
using HsvImage = Image<float, 3, struct HsvTag>;

/// CIELAB planes: L in [0,100], a and b unbounded. D65 white, sRGB input.
using LabImage = Image<float, 3, struct LabTag>;

}  // namespace fvc
