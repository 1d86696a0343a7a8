#pragma once

// Reference computations for the tests, coded independently of the
// library so the two can disagree. Everything here favors clarity and
// double precision over speed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "fvc/image.hpp"

namespace oracle {

// sRGB 0-255 -> CIELAB under D65, 2-degree observer.
inline std::array<double, 3> lab(double r8, double g8, double b8) {
  auto linear = [](double c8) {
    const double c = c8 / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
  };
  const double r = linear(r8), g = linear(g8), b = linear(b8);
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  const double xn = 0.95047, yn = 1.0, zn = 1.08883;
  auto f = [](double t) {
    const double d = 6.0 / 29.0;
    return t > d * d * d ? std::cbrt(t) : t / (3.0 * d * d) + 4.0 / 29.0;
  };
  const double fx = f(x / xn), fy = f(y / yn), fz = f(z / zn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

// HSV in half-degree hue / 0-255 S,V convention -> RGB 0-255 reals.
// Analytic inverse of the standard forward conversion.
inline std::array<double, 3> rgb_from_hsv(double h, double s, double v) {
  const double hue_deg = h * 2.0;
  const double sat = s / 255.0;
  const double chroma = v * sat;  // C in 0-255 units
  const double hp = hue_deg / 60.0;
  const double x = chroma * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1)      { r = chroma; g = x; }
  else if (hp < 2) { r = x; g = chroma; }
  else if (hp < 3) { g = chroma; b = x; }
  else if (hp < 4) { g = x; b = chroma; }
  else if (hp < 5) { r = x; b = chroma; }
  else             { r = chroma; b = x; }
  const double m = v - chroma;
  return {r + m, g + m, b + m};
}

// Classic single-bin full-accumulator Hough peak.
struct HoughPeak {
  double rho = 0.0;
  double theta = 0.0;
  int votes = 0;
};

inline HoughPeak hough_peak(const fvc::BinaryMask& edges, double rho_res,
                            double theta_res_deg) {
  const double diag = std::hypot(static_cast<double>(edges.width()),
                                 static_cast<double>(edges.height()));
  const int n_theta = static_cast<int>(std::lround(180.0 / theta_res_deg));
  const int n_rho = static_cast<int>(std::ceil(2.0 * diag / rho_res)) + 1;
  std::vector<int> acc(static_cast<std::size_t>(n_theta) * n_rho, 0);
  for (fvc::Index y = 0; y < edges.height(); ++y) {
    for (fvc::Index x = 0; x < edges.width(); ++x) {
      if (edges.at(x, y) == 0) continue;
      for (int t = 0; t < n_theta; ++t) {
        const double th = t * theta_res_deg * 3.14159265358979323846 / 180.0;
        const double rho = x * std::cos(th) + y * std::sin(th);
        const int r = static_cast<int>(std::lround((rho + diag) / rho_res));
        if (r >= 0 && r < n_rho) ++acc[static_cast<std::size_t>(t) * n_rho + r];
      }
    }
  }
  HoughPeak best;
  for (int t = 0; t < n_theta; ++t) {
    for (int r = 0; r < n_rho; ++r) {
      const int v = acc[static_cast<std::size_t>(t) * n_rho + r];
      if (v > best.votes) {
        best.votes = v;
        best.theta = t * theta_res_deg * 3.14159265358979323846 / 180.0;
        best.rho = r * rho_res - diag;
      }
    }
  }
  return best;
}

// Ray-casting even-odd point-in-polygon.
inline bool point_in_polygon(double px, double py,
                             const std::vector<std::pair<double, double>>& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto [xi, yi] = poly[i];
    const auto [xj, yj] = poly[j];
    if ((yi > py) != (yj > py) &&
        px < (xj - xi) * (py - yi) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

inline double shoelace(const std::vector<std::pair<double, double>>& poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x0, y0] = poly[i];
    const auto [x1, y1] = poly[(i + 1) % n];
    twice += x0 * y1 - x1 * y0;
  }
  return std::fabs(twice) / 2.0;
}

// Gift-wrapping hull, distinct from the library's monotone chain.
inline std::vector<std::pair<double, double>> jarvis_hull(
    std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<std::pair<double, double>> hull;
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] < pts[start]) start = i;
  }
  std::size_t p = start;
  do {
    hull.push_back(pts[p]);
    std::size_t q = (p + 1) % pts.size();
    for (std::size_t r = 0; r < pts.size(); ++r) {
      const double cross = (pts[q].first - pts[p].first) *
                               (pts[r].second - pts[p].second) -
                           (pts[q].second - pts[p].second) *
                               (pts[r].first - pts[p].first);
      if (cross < 0) q = r;
    }
    p = q;
  } while (p != start && hull.size() <= pts.size());
  return hull;
}

// Minimum bounding-rectangle area over every hull-edge orientation.
inline double min_rect_area_sweep(
    const std::vector<std::pair<double, double>>& pts) {
  const auto hull = jarvis_hull(pts);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto [x0, y0] = hull[i];
    const auto [x1, y1] = hull[(i + 1) % hull.size()];
    const double theta = std::atan2(y1 - y0, x1 - x0);
    const double c = std::cos(theta), s = std::sin(theta);
    double ulo = 1e300, uhi = -1e300, vlo = 1e300, vhi = -1e300;
    for (const auto& [x, y] : hull) {
      const double u = x * c + y * s;
      const double v = -x * s + y * c;
      ulo = std::min(ulo, u);
      uhi = std::max(uhi, u);
      vlo = std::min(vlo, v);
      vhi = std::max(vhi, v);
    }
    best = std::min(best, (uhi - ulo) * (vhi - vlo));
  }
  return best;
}

inline double cosine(const std::vector<double>& a,
                     const std::vector<double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  return static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
}

}  // namespace oracle
