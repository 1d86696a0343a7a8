#include "fvc/gridlines.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "fvc/errors.hpp"

namespace fvc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDeg = kPi / 180.0;

using Accumulator =
    Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic,
                 Eigen::RowMajor>;

// Walk the infinite line through the full edge map, cutting runs that
// satisfy min_len / max_gap. An edge pixel within about one pixel to
// either side of the line keeps the run alive. Pixels belonging to an
// accepted run are reported through `consumed` so the caller can retire
// them from the edge pool and the accumulator.
void walk_line(const EdgeMap& edges, double rho, double theta,
               const HoughParams& p, std::vector<LineSegment>& out,
               std::vector<std::pair<Index, Index>>* consumed) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Point base(rho * c, rho * s);
  const Point dir(-s, c);

  const double w = static_cast<double>(edges.width());
  const double h = static_cast<double>(edges.height());
  // Project the canvas corners onto the direction to bound the walk.
  double t0 = std::numeric_limits<double>::infinity();
  double t1 = -t0;
  for (const Point& corner : {Point(0, 0), Point(w - 1, 0), Point(0, h - 1),
                              Point(w - 1, h - 1)}) {
    const double t = (corner - base).dot(dir);
    t0 = std::min(t0, t);
    t1 = std::max(t1, t);
  }

  std::vector<std::pair<Index, Index>> run_px;
  auto edge_near = [&](double t) {
    const Point probe = base + t * dir;
    bool hit = false;
    for (const double o : {0.0, 1.0, -1.0}) {
      const Index x = static_cast<Index>(std::lround(probe.x() + o * c));
      const Index y = static_cast<Index>(std::lround(probe.y() + o * s));
      if (edges.in_bounds(x, y) && edges.at(x, y) != 0) {
        hit = true;
        run_px.emplace_back(x, y);
      }
    }
    return hit;
  };

  double run_start = 0.0;
  double run_end = 0.0;
  bool in_run = false;
  auto flush = [&]() {
    if (in_run && run_end - run_start >= p.min_len) {
      // Anchor the segment on the first and last matched pixels rather
      // than on the quantised accumulator line: the pixels carry the
      // true position, the bin only carries it to within its resolution.
      const auto& [x0, y0] = run_px.front();
      const auto& [x1, y1] = run_px.back();
      out.push_back({Point(static_cast<double>(x0), static_cast<double>(y0)),
                     Point(static_cast<double>(x1), static_cast<double>(y1))});
      if (consumed) {
        consumed->insert(consumed->end(), run_px.begin(), run_px.end());
      }
    }
    in_run = false;
    run_px.clear();
  };

  for (double t = std::floor(t0); t <= std::ceil(t1); t += 1.0) {
    if (!in_run) run_px.clear();
    const std::size_t before = run_px.size();
    if (edge_near(t)) {
      if (!in_run) {
        run_start = t;
        in_run = true;
      } else if (t - run_end > p.max_gap) {
        // The pixels just probed open the next run; carve them off
        // before flushing the one that ended.
        std::vector<std::pair<Index, Index>> next(
            run_px.begin() + static_cast<std::ptrdiff_t>(before),
            run_px.end());
        run_px.resize(before);
        flush();
        run_px = std::move(next);
        run_start = t;
        in_run = true;
      }
      run_end = t;
    }
  }
  flush();
}

}  // namespace

std::vector<LineSegment> hough_lines(const EdgeMap& edges,
                                     const HoughParams& p) {
  if (p.rho_res <= 0.0 || p.theta_res_deg <= 0.0 ||
      p.sample_fraction <= 0.0 || p.sample_fraction > 1.0 ||
      p.vote_floor > p.vote_start || p.vote_step <= 0) {
    throw std::invalid_argument("hough_lines: invalid parameters");
  }

  std::vector<std::pair<Index, Index>> edge_px;
  for (Index y = 0; y < edges.height(); ++y) {
    for (Index x = 0; x < edges.width(); ++x) {
      if (edges.at(x, y) != 0) edge_px.emplace_back(x, y);
    }
  }
  if (edge_px.empty()) {
    throw NoLinesFound("edge map is empty");
  }

  std::vector<std::pair<Index, Index>> voters;
  if (p.sample_fraction >= 1.0) {
    voters = edge_px;
  } else {
    const std::size_t m = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::lround(p.sample_fraction *
                           static_cast<double>(edge_px.size()))));
    voters.reserve(m);
    std::mt19937_64 rng(p.seed);
    std::sample(edge_px.begin(), edge_px.end(), std::back_inserter(voters), m,
                rng);
  }

  const int n_theta =
      static_cast<int>(std::lround(180.0 / p.theta_res_deg));
  const double diag = std::hypot(static_cast<double>(edges.width()),
                                 static_cast<double>(edges.height()));
  const int n_rho =
      static_cast<int>(std::ceil(2.0 * diag / p.rho_res)) + 2;

  std::vector<double> cos_t(n_theta), sin_t(n_theta);
  for (int t = 0; t < n_theta; ++t) {
    cos_t[t] = std::cos(t * p.theta_res_deg * kDeg);
    sin_t[t] = std::sin(t * p.theta_res_deg * kDeg);
  }

  const Index w = edges.width();
  Accumulator acc = Accumulator::Zero(n_theta, n_rho);
  std::vector<std::uint8_t> is_voter(
      static_cast<std::size_t>(w) * edges.height(), 0);
  auto cast_votes = [&](Index x, Index y, std::int32_t delta) {
    for (int t = 0; t < n_theta; ++t) {
      const double rho =
          static_cast<double>(x) * cos_t[t] + static_cast<double>(y) * sin_t[t];
      // Real-valued ρ straddles two bins; vote into both so that a
      // line whose ρ sits near a bin edge still concentrates its count.
      const int r0 = static_cast<int>(std::floor((rho + diag) / p.rho_res));
      if (r0 >= 0 && r0 < n_rho) acc(t, r0) += delta;
      if (r0 + 1 >= 0 && r0 + 1 < n_rho) acc(t, r0 + 1) += delta;
    }
  };
  for (const auto& [x, y] : voters) {
    is_voter[static_cast<std::size_t>(y) * w + x] = 1;
    cast_votes(x, y, +1);
  }

  // Strongest-first harvest: take the best cell at or above the current
  // threshold, trace its line, and retire the traced pixels from both
  // the edge pool and the accumulator so weaker lines surface once the
  // threshold descends to their own vote level.
  EdgeMap remaining = edges;
  std::vector<LineSegment> result;
  std::vector<std::pair<Index, Index>> consumed;
  for (int threshold = p.vote_start; threshold >= p.vote_floor;
       threshold -= p.vote_step) {
    for (;;) {
      int best_t = -1;
      int best_r = -1;
      std::int32_t best_v = threshold - 1;
      for (int t = 0; t < n_theta; ++t) {
        for (int r = 0; r < n_rho; ++r) {
          if (acc(t, r) > best_v) {
            best_v = acc(t, r);
            best_t = t;
            best_r = r;
          }
        }
      }
      if (best_t < 0) break;

      const double theta = best_t * p.theta_res_deg * kDeg;
      const double rho = best_r * p.rho_res - diag;
      const std::size_t had = result.size();
      consumed.clear();
      walk_line(remaining, rho, theta, p, result, &consumed);
      if (result.size() == had) {
        // Nothing long enough along this line; retire the cell so the
        // search can move on.
        acc(best_t, best_r) = 0;
        continue;
      }
      for (const auto& [x, y] : consumed) {
        if (remaining.at(x, y) == 0) continue;
        remaining.at(x, y) = 0;
        std::uint8_t& voter = is_voter[static_cast<std::size_t>(y) * w + x];
        if (voter) {
          voter = 0;
          cast_votes(x, y, -1);
        }
      }
    }
  }

  if (result.empty()) {
    throw NoLinesFound("vote floor reached with no line segments");
  }
  return result;
}

Orientation classify_orientation(const LineSegment& s) {
  const double a = segment_angle(s) / kDeg;  // [0, 180)
  if (a <= 10.0 || a >= 170.0) return Orientation::Horizontal;
  if (std::abs(a - 90.0) <= 10.0) return Orientation::Vertical;
  return Orientation::Other;
}

namespace {

double angle_between(double a1, double a2) {
  double d = std::abs(a1 - a2);
  return std::min(d, kPi - d);
}

double point_segment_distance(const Point& p, const LineSegment& s) {
  const Point d = s.p1 - s.p0;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - s.p0).norm();
  const double t = std::clamp((p - s.p0).dot(d) / len2, 0.0, 1.0);
  return (p - (s.p0 + t * d)).norm();
}

// Closest approach of two segments. The angle gate upstream keeps the
// pairs near-parallel, where the endpoint-to-segment minimum is exact.
double segment_distance(const LineSegment& a, const LineSegment& b) {
  return std::min(std::min(point_segment_distance(a.p0, b),
                           point_segment_distance(a.p1, b)),
                  std::min(point_segment_distance(b.p0, a),
                           point_segment_distance(b.p1, a)));
}

}  // namespace

std::vector<LineSegment> merge_lines(const std::vector<LineSegment>& segs,
                                     double dist_px, double ang_deg) {
  const std::size_t n = segs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };

  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) angles[i] = segment_angle(segs[i]);

  const double ang_rad = ang_deg * kDeg;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (angle_between(angles[i], angles[j]) >= ang_rad) continue;
      // Separation is how far apart the segments themselves come: two
      // detections of the same edge overlap and merge, while collinear
      // fragments from different bars keep their gap and both survive.
      if (segment_distance(segs[i], segs[j]) >= dist_px) continue;
      const std::size_t ri = find(i);
      const std::size_t rj = find(j);
      if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    }
  }

  // Longest member represents each group; earliest wins ties.
  std::vector<std::size_t> rep(n, SIZE_MAX);
  std::vector<LineSegment> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (rep[r] == SIZE_MAX) {
      rep[r] = i;
    } else if (segs[i].length() > segs[rep[r]].length()) {
      rep[r] = i;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rep[find(i)] == i) out.push_back(segs[i]);
  }
  return out;
}

LineSegment snap_to_boundary(const LineSegment& s, const BinaryMask& mask,
                             double radius) {
  const double len = s.length();
  if (len <= 0.0 || radius <= 0.0) return s;
  const Point u = (s.p1 - s.p0) / len;
  const Point normal(-u.y(), u.x());

  // -1 out of canvas, otherwise 0 / 1 for dark / white.
  auto sample = [&mask](const Point& p) -> int {
    const Index x = static_cast<Index>(std::lround(p.x()));
    const Index y = static_cast<Index>(std::lround(p.y()));
    if (!mask.in_bounds(x, y)) return -1;
    return mask.at(x, y) != 0 ? 1 : 0;
  };

  const double margin = std::min(0.1 * len, 8.0);
  const double span = len - 2.0 * margin;
  const int stations = std::max(2, static_cast<int>(span / 3.0));
  constexpr double kStep = 0.25;

  std::vector<Point> boundary;
  for (int k = 0; k < stations; ++k) {
    const double t = margin + span * k / (stations - 1);
    const Point base = s.p0 + t * u;
    const int lo = sample(base - radius * normal);
    const int hi = sample(base + radius * normal);
    if (lo < 0 || hi < 0 || lo == hi) continue;

    // Nearest transition to the line wins if the scan crosses several.
    double best = std::numeric_limits<double>::quiet_NaN();
    int prev = lo;
    for (double o = -radius + kStep; o <= radius + 1e-9; o += kStep) {
      const int v = sample(base + o * normal);
      if (v >= 0 && prev >= 0 && v != prev) {
        const double mid = o - 0.5 * kStep;
        if (std::isnan(best) || std::abs(mid) < std::abs(best)) best = mid;
      }
      prev = v;
    }
    if (!std::isnan(best)) boundary.push_back(base + best * normal);
  }
  if (2 * boundary.size() < static_cast<std::size_t>(stations)) return s;

  Point centroid = Point::Zero();
  for (const Point& p : boundary) centroid += p;
  centroid /= static_cast<double>(boundary.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const Point& p : boundary) {
    const Point d = p - centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
  const Point axis = eig.eigenvectors().col(1);  // largest eigenvalue last

  return {centroid + (s.p0 - centroid).dot(axis) * axis,
          centroid + (s.p1 - centroid).dot(axis) * axis};
}

std::vector<SegmentLines> assign_lines(const std::vector<LineSegment>& segs,
                                       double frame_width,
                                       double frame_height, int n_segments) {
  if (n_segments < 1) {
    throw std::invalid_argument("assign_lines: need at least one segment");
  }
  const double band_h = frame_height / n_segments;

  std::vector<SegmentLines> bands(static_cast<std::size_t>(n_segments));
  for (int i = 0; i < n_segments; ++i) {
    bands[i].segment_index = i;
    bands[i].band_y0 = i * band_h;
    bands[i].band_y1 = (i + 1) * band_h;
    bands[i].width = frame_width;
  }

  const double tol = band_h / 4.0;  // stand-in for the bar width
  for (const LineSegment& s : segs) {
    const Orientation o = classify_orientation(s);
    if (o == Orientation::Other) continue;
    if (n_segments == 1) {
      (o == Orientation::Horizontal ? bands[0].horizontals
                                    : bands[0].verticals)
          .push_back(s);
      continue;
    }
    if (o == Orientation::Vertical) {
      const double ylo = std::min(s.p0.y(), s.p1.y());
      const double yhi = std::max(s.p0.y(), s.p1.y());
      for (SegmentLines& band : bands) {
        if (yhi >= band.band_y0 && ylo <= band.band_y1) {
          band.verticals.push_back(s);
        }
      }
    } else {
      const double ym = s.midpoint().y();
      for (SegmentLines& band : bands) {
        if (std::abs(ym - band.band_y0) <= tol ||
            std::abs(ym - band.band_y1) <= tol) {
          band.horizontals.push_back(s);
        }
      }
    }
  }

  for (SegmentLines& band : bands) {
    band.over_expected =
        band.horizontals.size() > 4 || band.verticals.size() > 2;
  }
  return bands;
}

SegmentPolygon inner_quad(const SegmentLines& sl) {
  const double yc = 0.5 * (sl.band_y0 + sl.band_y1);
  const double xc = 0.5 * sl.width;
  const double span = std::max(sl.width, sl.band_y1) + 16.0;

  // Probe lines through the band's center to read off where each candidate
  // crosses it.
  const LineSegment center_v{{xc, yc - span}, {xc, yc + span}};
  const LineSegment center_h{{xc - span, yc}, {xc + span, yc}};

  const LineSegment* top = nullptr;
  const LineSegment* bottom = nullptr;
  double top_y = -std::numeric_limits<double>::infinity();
  double bottom_y = std::numeric_limits<double>::infinity();
  for (const LineSegment& hseg : sl.horizontals) {
    const std::optional<Point> hit = intersect_lines(hseg, center_v);
    if (!hit) continue;
    const double y = hit->y();
    if (y <= yc && y > top_y) {
      top_y = y;
      top = &hseg;
    }
    if (y > yc && y < bottom_y) {
      bottom_y = y;
      bottom = &hseg;
    }
  }

  const LineSegment* left = nullptr;
  const LineSegment* right = nullptr;
  double left_x = -std::numeric_limits<double>::infinity();
  double right_x = std::numeric_limits<double>::infinity();
  for (const LineSegment& vseg : sl.verticals) {
    const std::optional<Point> hit = intersect_lines(vseg, center_h);
    if (!hit) continue;
    const double x = hit->x();
    if (x <= xc && x > left_x) {
      left_x = x;
      left = &vseg;
    }
    if (x > xc && x < right_x) {
      right_x = x;
      right = &vseg;
    }
  }

  if (!top || !bottom || !left || !right) {
    throw InsufficientLines("segment " + std::to_string(sl.segment_index) +
                            ": need two horizontals and two verticals "
                            "around the band center");
  }

  const std::optional<Point> tl = intersect_lines(*top, *left);
  const std::optional<Point> tr = intersect_lines(*top, *right);
  const std::optional<Point> br = intersect_lines(*bottom, *right);
  const std::optional<Point> bl = intersect_lines(*bottom, *left);
  if (!tl || !tr || !br || !bl) {
    throw ParallelInnerLines("segment " + std::to_string(sl.segment_index) +
                             ": inner lines do not intersect");
  }

  SegmentPolygon out;
  out.segment_index = sl.segment_index;
  out.quad.vertices = {*tl, *tr, *br, *bl};
  return out;
}

std::vector<BinaryMask> segment_masks(const std::vector<SegmentPolygon>& quads,
                                      Index w, Index h) {
  std::vector<BinaryMask> masks;
  masks.reserve(quads.size());
  for (const SegmentPolygon& q : quads) {
    masks.push_back(rasterize_polygon(q.quad, w, h));
  }
  return masks;
}

}  // namespace fvc
