#include "fvc/color.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fvc {

namespace {

// sRGB companding, 8-bit in, linear [0,1] out. 256-entry table; the input
// domain is exactly the byte range.
inline double srgb_to_linear(std::uint8_t c8) {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    }
    return t;
  }();
  return table[c8];
}

inline double lab_f(double t) {
  constexpr double kEps = 216.0 / 24389.0;
  constexpr double kKappa = 24389.0 / 27.0;
  return t > kEps ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

// sRGB -> XYZ, D65 reference white.
constexpr double kM[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};
constexpr double kWhite[3] = {0.95047, 1.0, 1.08883};

}  // namespace

Eigen::Vector3f hsv_from_rgb(float r, float g, float b) {
  const float v = std::max({r, g, b});
  const float mn = std::min({r, g, b});
  const float delta = v - mn;
  const float s = v <= 0.f ? 0.f : 255.f * delta / v;
  float h = 0.f;
  if (delta > 0.f) {
    if (v == r) {
      h = 60.f * (g - b) / delta;
    } else if (v == g) {
      h = 120.f + 60.f * (b - r) / delta;
    } else {
      h = 240.f + 60.f * (r - g) / delta;
    }
    if (h < 0.f) h += 360.f;
    h *= 0.5f;               // half-degree scale
    if (h >= 180.f) h = 0.f; // wrap the 360-degree seam
  }
  return {h, s, v};
}

Eigen::Vector3f lab_from_srgb(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double rl = srgb_to_linear(r);
  const double gl = srgb_to_linear(g);
  const double bl = srgb_to_linear(b);
  const double x = kM[0][0] * rl + kM[0][1] * gl + kM[0][2] * bl;
  const double y = kM[1][0] * rl + kM[1][1] * gl + kM[1][2] * bl;
  const double z = kM[2][0] * rl + kM[2][1] * gl + kM[2][2] * bl;
  const double fx = lab_f(x / kWhite[0]);
  const double fy = lab_f(y / kWhite[1]);
  const double fz = lab_f(z / kWhite[2]);
  const double L = std::clamp(116.0 * fy - 16.0, 0.0, 100.0);
  return {static_cast<float>(L), static_cast<float>(500.0 * (fx - fy)),
          static_cast<float>(200.0 * (fy - fz))};
}

HsvImage rgb_to_hsv(const Rgb8Image& img) {
  HsvImage out(img.width(), img.height());
  const auto& r = img.plane(0);
  const auto& g = img.plane(1);
  const auto& b = img.plane(2);
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      const Eigen::Vector3f hsv = hsv_from_rgb(r(y, x), g(y, x), b(y, x));
      out.plane(0)(y, x) = hsv[0];
      out.plane(1)(y, x) = hsv[1];
      out.plane(2)(y, x) = hsv[2];
    }
  }
  return out;
}

LabImage rgb_to_lab(const Rgb8Image& img) {
  LabImage out(img.width(), img.height());
  const auto& r = img.plane(0);
  const auto& g = img.plane(1);
  const auto& b = img.plane(2);
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      const Eigen::Vector3f lab = lab_from_srgb(r(y, x), g(y, x), b(y, x));
      out.plane(0)(y, x) = lab[0];
      out.plane(1)(y, x) = lab[1];
      out.plane(2)(y, x) = lab[2];
    }
  }
  return out;
}

}  // namespace fvc
