#include "fvc/edges.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

namespace fvc {

namespace {

using FloatPlane =
    Eigen::Array<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

FloatPlane gaussian_blur_5x5(const GrayImage& img, float sigma) {
  std::array<float, 5> k;
  float sum = 0.0f;
  for (int i = 0; i < 5; ++i) {
    const float d = static_cast<float>(i - 2);
    k[i] = std::exp(-d * d / (2.0f * sigma * sigma));
    sum += k[i];
  }
  for (float& v : k) v /= sum;

  const Index w = img.width();
  const Index h = img.height();
  FloatPlane tmp(h, w);
  FloatPlane out(h, w);
  for (Index y = 0; y < h; ++y) {  // horizontal pass, clamped borders
    for (Index x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int i = -2; i <= 2; ++i) {
        const Index xi = std::clamp<Index>(x + i, 0, w - 1);
        acc += k[i + 2] * static_cast<float>(img.at(xi, y));
      }
      tmp(y, x) = acc;
    }
  }
  for (Index y = 0; y < h; ++y) {  // vertical pass
    for (Index x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int i = -2; i <= 2; ++i) {
        const Index yi = std::clamp<Index>(y + i, 0, h - 1);
        acc += k[i + 2] * tmp(yi, x);
      }
      out(y, x) = acc;
    }
  }
  return out;
}

}  // namespace

double contour_area(const Contour& c) {
  const std::size_t n = c.points.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2i& a = c.points[i];
    const Eigen::Vector2i& b = c.points[(i + 1) % n];
    twice += static_cast<double>(a.x()) * b.y() -
             static_cast<double>(b.x()) * a.y();
  }
  return std::abs(0.5 * twice);
}

EdgeMap canny(const GrayImage& img, double low, double high) {
  if (low < 0.0 || low > high || high > 255.0) {
    throw std::invalid_argument("canny: need 0 <= low <= high <= 255");
  }

  const Index w = img.width();
  const Index h = img.height();
  const FloatPlane smooth = gaussian_blur_5x5(img, 1.4f);

  FloatPlane mag = FloatPlane::Zero(h, w);
  FloatPlane gx = FloatPlane::Zero(h, w);
  FloatPlane gy = FloatPlane::Zero(h, w);
  for (Index y = 1; y + 1 < h; ++y) {
    for (Index x = 1; x + 1 < w; ++x) {
      const float sx = (smooth(y - 1, x + 1) + 2.0f * smooth(y, x + 1) +
                        smooth(y + 1, x + 1)) -
                       (smooth(y - 1, x - 1) + 2.0f * smooth(y, x - 1) +
                        smooth(y + 1, x - 1));
      const float sy = (smooth(y + 1, x - 1) + 2.0f * smooth(y + 1, x) +
                        smooth(y + 1, x + 1)) -
                       (smooth(y - 1, x - 1) + 2.0f * smooth(y - 1, x) +
                        smooth(y - 1, x + 1));
      gx(y, x) = sx;
      gy(y, x) = sy;
      mag(y, x) = std::hypot(sx, sy);
    }
  }

  // Non-maximum suppression along the quantized gradient direction. On a
  // plateau of two equal magnitudes the asymmetric (>, >=) pair keeps
  // exactly one pixel, so ideal steps stay one pixel wide.
  FloatPlane thin = FloatPlane::Zero(h, w);
  for (Index y = 1; y + 1 < h; ++y) {
    for (Index x = 1; x + 1 < w; ++x) {
      const float m = mag(y, x);
      if (m == 0.0f) continue;
      float angle = std::atan2(gy(y, x), gx(y, x)) * 180.0f / 3.14159265f;
      if (angle < 0.0f) angle += 180.0f;
      float n1, n2;
      if (angle < 22.5f || angle >= 157.5f) {  // horizontal gradient
        n1 = mag(y, x - 1);
        n2 = mag(y, x + 1);
      } else if (angle < 67.5f) {
        n1 = mag(y - 1, x - 1);
        n2 = mag(y + 1, x + 1);
      } else if (angle < 112.5f) {  // vertical gradient
        n1 = mag(y - 1, x);
        n2 = mag(y + 1, x);
      } else {
        n1 = mag(y - 1, x + 1);
        n2 = mag(y + 1, x - 1);
      }
      if (m > n1 && m >= n2) thin(y, x) = m;
    }
  }

  // Hysteresis: flood out from strong pixels through weak ones.
  EdgeMap out(w, h);
  out.plane(0).setZero();
  const float lo = static_cast<float>(low);
  const float hi = static_cast<float>(high);
  std::deque<std::pair<Index, Index>> queue;
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      if (thin(y, x) >= hi) {
        out.at(x, y) = 255;
        queue.emplace_back(x, y);
      }
    }
  }
  while (!queue.empty()) {
    const auto [cx, cy] = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const Index nx = cx + dx;
        const Index ny = cy + dy;
        if (!out.in_bounds(nx, ny) || out.at(nx, ny) != 0) continue;
        if (thin(ny, nx) >= lo) {
          out.at(nx, ny) = 255;
          queue.emplace_back(nx, ny);
        }
      }
    }
  }
  return out;
}

namespace {

// Clockwise 8-neighborhood ring in image coordinates (y grows downward).
constexpr std::array<std::array<int, 2>, 8> kRing = {{{1, 0},
                                                      {1, 1},
                                                      {0, 1},
                                                      {-1, 1},
                                                      {-1, 0},
                                                      {-1, -1},
                                                      {0, -1},
                                                      {1, -1}}};

int ring_code(int dx, int dy) {
  for (int i = 0; i < 8; ++i) {
    if (kRing[i][0] == dx && kRing[i][1] == dy) return i;
  }
  return -1;
}

// Moore-neighbor trace of the outer boundary starting at the component's
// topmost-leftmost pixel, stopping when the first step repeats (Jacob's
// criterion).
Contour trace_boundary(const BinaryMask& mask, Index sx, Index sy) {
  auto white = [&](Index x, Index y) {
    return mask.in_bounds(x, y) && mask.at(x, y) != 0;
  };
  Contour c;
  c.points.push_back({static_cast<int>(sx), static_cast<int>(sy)});

  Index cx = sx, cy = sy;
  int backtrack = 4;  // the W neighbor of a topmost-leftmost pixel is black
  Index first_next_x = -1, first_next_y = -1;
  const std::size_t limit =
      4 * static_cast<std::size_t>(mask.pixel_count()) + 8;

  for (std::size_t step = 0; step < limit; ++step) {
    int found = -1;
    for (int k = 1; k <= 8; ++k) {
      const int d = (backtrack + k) % 8;
      if (white(cx + kRing[d][0], cy + kRing[d][1])) {
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel

    const int prev = (found + 7) % 8;  // background scanned just before
    const Index nx = cx + kRing[found][0];
    const Index ny = cy + kRing[found][1];
    const Index bx = cx + kRing[prev][0];
    const Index by = cy + kRing[prev][1];

    if (first_next_x < 0) {
      first_next_x = nx;
      first_next_y = ny;
    } else if (cx == sx && cy == sy && nx == first_next_x &&
               ny == first_next_y) {
      break;  // about to repeat the opening move
    }

    c.points.push_back({static_cast<int>(nx), static_cast<int>(ny)});
    backtrack = ring_code(static_cast<int>(bx - nx), static_cast<int>(by - ny));
    cx = nx;
    cy = ny;
  }
  // The walk may pass through the start several times before the opening
  // move repeats; trim the final revisit so the list is a clean cycle.
  if (c.points.size() > 1 && c.points.front() == c.points.back()) {
    c.points.pop_back();
  }
  return c;
}

}  // namespace

std::vector<Contour> find_contours(const BinaryMask& mask) {
  const Index w = mask.width();
  const Index h = mask.height();
  Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      comp = Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic,
                          Eigen::RowMajor>::Constant(h, w, -1);

  std::vector<Contour> contours;
  std::deque<std::pair<Index, Index>> queue;
  std::int32_t next_id = 0;

  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      if (mask.at(x, y) == 0 || comp(y, x) >= 0) continue;

      const std::int32_t id = next_id++;
      comp(y, x) = id;
      queue.emplace_back(x, y);
      while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const Index nx = cx + dx;
            const Index ny = cy + dy;
            if (!mask.in_bounds(nx, ny) || mask.at(nx, ny) == 0 ||
                comp(ny, nx) >= 0) {
              continue;
            }
            comp(ny, nx) = id;
            queue.emplace_back(nx, ny);
          }
        }
      }

      Contour c = trace_boundary(mask, x, y);
      if (c.points.size() >= 4) contours.push_back(std::move(c));
    }
  }
  return contours;
}

const Contour& largest_contour(const std::vector<Contour>& cs) {
  if (cs.empty()) {
    throw std::invalid_argument("largest_contour: empty contour list");
  }
  std::size_t best = 0;
  double best_area = contour_area(cs[0]);
  for (std::size_t i = 1; i < cs.size(); ++i) {
    const double a = contour_area(cs[i]);
    if (a > best_area) {
      best_area = a;
      best = i;
    }
  }
  return cs[best];
}

}  // namespace fvc
