#include "fvc/raster.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fvc {

BinaryMask threshold_range(const HsvImage& img, const Eigen::Vector3f& lo,
                           const Eigen::Vector3f& hi) {
  if ((lo.array() > hi.array()).any()) {
    throw std::invalid_argument("threshold_range: lo must be <= hi");
  }
  const auto in_range = [&](int c) {
    return (img.plane(c) >= lo[c]) && (img.plane(c) <= hi[c]);
  };
  BinaryMask out(img.width(), img.height());
  out.plane(0) = (in_range(0) && in_range(1) && in_range(2))
                     .select(BinaryMask::Plane::Constant(img.height(),
                                                         img.width(), 255),
                             out.plane(0));
  return out;
}

GrayImage median_blur(const GrayImage& img, int k) {
  if (k < 1 || k % 2 == 0) {
    throw std::invalid_argument("median_blur: window size must be odd and >= 1");
  }
  if (k == 1) return img;

  const Index w = img.width();
  const Index h = img.height();
  const int r = k / 2;
  GrayImage out(w, h);
  std::vector<std::uint8_t> window(static_cast<std::size_t>(k) * k);
  const auto& src = img.plane(0);
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      std::size_t n = 0;
      for (int dy = -r; dy <= r; ++dy) {
        const Index yy = std::clamp<Index>(y + dy, 0, h - 1);
        for (int dx = -r; dx <= r; ++dx) {
          const Index xx = std::clamp<Index>(x + dx, 0, w - 1);
          window[n++] = src(yy, xx);
        }
      }
      auto mid = window.begin() + static_cast<std::ptrdiff_t>(n / 2);
      std::nth_element(window.begin(), mid, window.begin() + static_cast<std::ptrdiff_t>(n));
      out.plane(0)(y, x) = *mid;
    }
  }
  return out;
}

namespace {

template <typename Img>
Img masked_copy(const Img& img, const BinaryMask& mask) {
  if (!same_size(img, mask)) {
    throw std::invalid_argument("bitwise_and: image and mask dimensions differ");
  }
  Img out(img.width(), img.height());
  const auto keep = mask.plane(0) != 0;
  for (int c = 0; c < Img::channels(); ++c) {
    out.plane(c) = keep.select(img.plane(c), out.plane(c));
  }
  return out;
}

}  // namespace

Rgb8Image bitwise_and(const Rgb8Image& img, const BinaryMask& mask) {
  return masked_copy(img, mask);
}

GrayImage bitwise_and(const GrayImage& img, const BinaryMask& mask) {
  return masked_copy(img, mask);
}

Index count_nonzero(const BinaryMask& mask) {
  return (mask.plane(0) != 0).count();
}

}  // namespace fvc
