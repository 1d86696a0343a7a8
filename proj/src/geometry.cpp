#include "fvc/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fvc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// z-component of (a - o) x (b - o).
double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool any_three_collinear(const std::array<Point, 4>& pts, double tol) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int k = j + 1; k < 4; ++k) {
        const double span = std::max({(pts[j] - pts[i]).norm(),
                                      (pts[k] - pts[i]).norm(),
                                      (pts[k] - pts[j]).norm()});
        if (std::abs(cross(pts[i], pts[j], pts[k])) <= tol * span * span) {
          return true;
        }
      }
    }
  }
  return false;
}

// Similarity transform taking the points to centroid 0, mean distance
// sqrt(2); the standard conditioning step before the DLT solve.
Eigen::Matrix3d normalizing_transform(const std::array<Point, 4>& pts) {
  Point centroid = Point::Zero();
  for (const Point& p : pts) centroid += p;
  centroid /= 4.0;

  double mean_dist = 0.0;
  for (const Point& p : pts) mean_dist += (p - centroid).norm();
  mean_dist /= 4.0;

  const double scale =
      mean_dist > 1e-12 ? std::sqrt(2.0) / mean_dist : 1.0;
  Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
  t(0, 0) = scale;
  t(1, 1) = scale;
  t(0, 2) = -scale * centroid.x();
  t(1, 2) = -scale * centroid.y();
  return t;
}

}  // namespace

double Polygon::signed_area() const {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

double Polygon::area() const { return std::abs(signed_area()); }

std::array<Point, 4> RotatedRect::corners() const {
  const Point u(std::cos(angle), std::sin(angle));
  const Point v(-std::sin(angle), std::cos(angle));
  const Point du = 0.5 * width * u;
  const Point dv = 0.5 * height * v;
  return {center - du - dv, center + du - dv, center + du + dv,
          center - du + dv};
}

Point apply_homography(const Homography& h, const Point& p) {
  const Eigen::Vector3d q = h * Eigen::Vector3d(p.x(), p.y(), 1.0);
  if (std::abs(q.z()) < 1e-12) {
    throw std::invalid_argument("apply_homography: point maps to infinity");
  }
  return Point(q.x() / q.z(), q.y() / q.z());
}

double segment_angle(const LineSegment& s) {
  const Point d = s.direction();
  if (d.squaredNorm() == 0.0) {
    throw std::invalid_argument("segment_angle: zero-length segment");
  }
  double a = std::atan2(d.y(), d.x());
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

PolarLine polar_from_segment(const LineSegment& s) {
  double theta = segment_angle(s) + kPi / 2.0;
  if (theta >= kPi) theta -= kPi;
  const Point m = s.midpoint();
  return {m.x() * std::cos(theta) + m.y() * std::sin(theta), theta};
}

double point_line_distance(const Point& p, const LineSegment& s) {
  const Point d = s.direction();
  const double len = d.norm();
  if (len == 0.0) return (p - s.p0).norm();
  return std::abs(cross(s.p0, s.p1, p)) / len;
}

Homography solve_homography(const std::array<Point, 4>& src,
                            const std::array<Point, 4>& dst) {
  constexpr double kCollinearTol = 1e-9;
  if (any_three_collinear(src, kCollinearTol)) {
    throw std::invalid_argument("solve_homography: collinear source points");
  }
  if (any_three_collinear(dst, kCollinearTol)) {
    throw std::invalid_argument(
        "solve_homography: collinear destination points");
  }

  const Eigen::Matrix3d ts = normalizing_transform(src);
  const Eigen::Matrix3d td = normalizing_transform(dst);

  Eigen::Matrix<double, 8, 9> a = Eigen::Matrix<double, 8, 9>::Zero();
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector3d s = ts * Eigen::Vector3d(src[i].x(), src[i].y(), 1);
    const Eigen::Vector3d d = td * Eigen::Vector3d(dst[i].x(), dst[i].y(), 1);
    const double x = s.x(), y = s.y(), u = d.x(), v = d.y();
    a.row(2 * i) << -x, -y, -1, 0, 0, 0, u * x, u * y, u;
    a.row(2 * i + 1) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
  }

  const Eigen::JacobiSVD<Eigen::Matrix<double, 8, 9>> svd(
      a, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 9, 1> h = svd.matrixV().col(8);

  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);

  Eigen::Matrix3d result = td.inverse() * hn * ts;
  if (std::abs(result(2, 2)) > 1e-12) {
    result /= result(2, 2);
  }
  return result;
}

Rgb8Image warp_perspective(const Rgb8Image& img, const Homography& h,
                           Index out_w, Index out_h) {
  Eigen::FullPivLU<Eigen::Matrix3d> lu(h);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("warp_perspective: singular homography");
  }
  const Eigen::Matrix3d inv = lu.inverse();

  Rgb8Image out(out_w, out_h);
  const Index w = img.width();
  const Index hgt = img.height();
  for (Index y = 0; y < out_h; ++y) {
    for (Index x = 0; x < out_w; ++x) {
      const Eigen::Vector3d q =
          inv * Eigen::Vector3d(static_cast<double>(x),
                                static_cast<double>(y), 1.0);
      if (std::abs(q.z()) < 1e-12) continue;
      const double sx = q.x() / q.z();
      const double sy = q.y() / q.z();
      if (sx < 0.0 || sy < 0.0 || sx > static_cast<double>(w - 1) ||
          sy > static_cast<double>(hgt - 1)) {
        continue;  // stays black
      }
      const Index x0 = std::min(static_cast<Index>(sx), w - 2 >= 0 ? w - 2 : 0);
      const Index y0 =
          std::min(static_cast<Index>(sy), hgt - 2 >= 0 ? hgt - 2 : 0);
      const double fx = sx - static_cast<double>(x0);
      const double fy = sy - static_cast<double>(y0);
      const Index x1 = std::min(x0 + 1, w - 1);
      const Index y1 = std::min(y0 + 1, hgt - 1);
      for (int c = 0; c < 3; ++c) {
        const double v00 = img.at(x0, y0, c);
        const double v10 = img.at(x1, y0, c);
        const double v01 = img.at(x0, y1, c);
        const double v11 = img.at(x1, y1, c);
        const double v = (1 - fy) * ((1 - fx) * v00 + fx * v10) +
                         fy * ((1 - fx) * v01 + fx * v11);
        out.at(x, y, c) = static_cast<std::uint8_t>(std::lround(
            std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return out;
}

Polygon convex_hull(const std::vector<Point>& points) {
  std::vector<Point> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  if (pts.size() < 3) {
    throw std::invalid_argument("convex_hull: fewer than 3 distinct points");
  }

  const std::size_t n = pts.size();
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first

  if (hull.size() < 3) {
    throw std::invalid_argument("convex_hull: points are collinear");
  }
  return Polygon{std::move(hull)};
}

RotatedRect min_area_rect(const std::vector<Point>& points) {
  const Polygon hull = convex_hull(points);
  const std::vector<Point>& v = hull.vertices;
  const std::size_t n = v.size();

  RotatedRect best;
  double best_area = std::numeric_limits<double>::infinity();
  double best_angle = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < n; ++i) {
    const Point e = v[(i + 1) % n] - v[i];
    double a = std::atan2(e.y(), e.x());
    a = std::fmod(a, kPi / 2.0);
    if (a < 0.0) a += kPi / 2.0;
    if (a >= kPi / 2.0) a = 0.0;  // guard fmod landing exactly on pi/2

    const double c = std::cos(a);
    const double s = std::sin(a);
    double min_u = std::numeric_limits<double>::infinity();
    double max_u = -min_u;
    double min_w = min_u;
    double max_w = -min_u;
    for (const Point& p : v) {
      const double pu = c * p.x() + s * p.y();
      const double pw = -s * p.x() + c * p.y();
      min_u = std::min(min_u, pu);
      max_u = std::max(max_u, pu);
      min_w = std::min(min_w, pw);
      max_w = std::max(max_w, pw);
    }
    const double area = (max_u - min_u) * (max_w - min_w);
    if (area < best_area - 1e-12 ||
        (area < best_area + 1e-12 && a < best_angle)) {
      best_area = area;
      best_angle = a;
      const double cu = 0.5 * (min_u + max_u);
      const double cw = 0.5 * (min_w + max_w);
      best.center = Point(c * cu - s * cw, s * cu + c * cw);
      best.width = max_u - min_u;
      best.height = max_w - min_w;
      best.angle = a;
    }
  }
  return best;
}

std::optional<Point> intersect_lines(const LineSegment& a,
                                     const LineSegment& b) {
  const Point da = a.direction().normalized();
  const Point db = b.direction().normalized();
  const double denom = da.x() * db.y() - da.y() * db.x();
  if (std::abs(denom) < 1e-9) return std::nullopt;
  const Point r = b.p0 - a.p0;
  const double t = (r.x() * db.y() - r.y() * db.x()) / denom;
  return a.p0 + t * da;
}

LineSegment extend_segment(const LineSegment& s, double factor) {
  if (factor < 1.0) {
    throw std::invalid_argument("extend_segment: factor must be >= 1");
  }
  const Point m = s.midpoint();
  return {m + factor * (s.p0 - m), m + factor * (s.p1 - m)};
}

namespace {

// Proper or improper crossing between non-adjacent edges; shared endpoints
// between adjacent edges are excluded by the caller.
bool segments_cross(const Point& p1, const Point& p2, const Point& q1,
                    const Point& q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](const Point& a, const Point& b, const Point& p) {
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
  };
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

bool is_simple(const std::vector<Point>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t i2 = (i + 1) % n;
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t j2 = (j + 1) % n;
      if (i == j || i2 == j || i == j2) continue;  // adjacent edges
      if (segments_cross(v[i], v[i2], v[j], v[j2])) return false;
    }
  }
  return true;
}

}  // namespace

BinaryMask rasterize_polygon(const Polygon& poly, Index w, Index h) {
  std::vector<Point> v;
  v.reserve(poly.vertices.size());
  for (const Point& p : poly.vertices) {  // drop zero-length edges
    if (v.empty() || (p - v.back()).squaredNorm() > 0.0) v.push_back(p);
  }
  if (v.size() > 1 && (v.front() - v.back()).squaredNorm() == 0.0) {
    v.pop_back();
  }
  if (v.size() < 3) {
    throw std::invalid_argument("rasterize_polygon: fewer than 3 vertices");
  }
  if (!is_simple(v)) {
    throw std::invalid_argument("rasterize_polygon: self-intersecting");
  }

  BinaryMask mask(w, h);
  mask.plane(0).setZero();
  const std::size_t n = v.size();
  std::vector<double> crossings;
  for (Index y = 0; y < h; ++y) {
    const double yc = static_cast<double>(y) + 0.5;
    crossings.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % n];
      // Half-open span rule so a vertex on the scanline counts once.
      if ((a.y() <= yc && yc < b.y()) || (b.y() <= yc && yc < a.y())) {
        crossings.push_back(a.x() +
                            (yc - a.y()) * (b.x() - a.x()) / (b.y() - a.y()));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
      const Index x0 = static_cast<Index>(
          std::max(0.0, std::ceil(crossings[i] - 0.5)));
      const Index x1 = std::min(
          w, static_cast<Index>(std::ceil(crossings[i + 1] - 0.5)));
      for (Index x = x0; x < x1; ++x) mask.at(x, y) = 255;
    }
  }
  return mask;
}

}  // namespace fvc
