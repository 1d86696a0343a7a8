#include "fvc/vegetation.hpp"

#include <array>
#include <stdexcept>

#include "fvc/color.hpp"
#include "fvc/raster.hpp"

namespace fvc {

std::vector<Eigen::Vector3d> mean_superpixel_color(
    const Rgb8Image& img, const SuperpixelLabeling& labeling) {
  if (img.height() != labeling.labels.rows() ||
      img.width() != labeling.labels.cols()) {
    throw std::invalid_argument(
        "mean_superpixel_color: image and labeling dimensions differ");
  }

  std::vector<Eigen::Vector4d> acc(
      static_cast<std::size_t>(labeling.n_labels), Eigen::Vector4d::Zero());
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      Eigen::Vector4d& a = acc[labeling.labels(y, x)];
      a[0] += img.at(x, y, 0);
      a[1] += img.at(x, y, 1);
      a[2] += img.at(x, y, 2);
      a[3] += 1.0;
    }
  }

  std::vector<Eigen::Vector3d> means;
  means.reserve(acc.size());
  for (const Eigen::Vector4d& a : acc) {
    means.push_back(a.head<3>() / a[3]);
  }
  return means;
}

bool is_green(const Eigen::Vector3d& rgb, const GreenCriterion& c) {
  if (c.mode == GreenCriterion::Mode::ExcessGreen) {
    return 2.0 * rgb.y() - rgb.x() - rgb.z() > c.exg_threshold;
  }
  const Eigen::Vector3f hsv =
      hsv_from_rgb(static_cast<float>(rgb.x()), static_cast<float>(rgb.y()),
                   static_cast<float>(rgb.z()));
  return hsv.x() >= c.hue_lo && hsv.x() <= c.hue_hi && hsv.y() >= c.s_min &&
         hsv.z() >= c.v_min;
}

BinaryMask vegetation_mask(const Rgb8Image& img,
                           const SuperpixelLabeling& labeling,
                           const GreenCriterion& c) {
  const std::vector<Eigen::Vector3d> means =
      mean_superpixel_color(img, labeling);
  std::vector<std::uint8_t> green(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    green[i] = is_green(means[i], c) ? 255 : 0;
  }

  BinaryMask mask(img.width(), img.height());
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      mask.at(x, y) = green[labeling.labels(y, x)];
    }
  }
  return mask;
}

Rgb8Image vegetation_overlay(const Rgb8Image& img, const BinaryMask& mask) {
  return bitwise_and(img, mask);
}

}  // namespace fvc
