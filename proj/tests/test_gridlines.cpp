#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fvc/errors.hpp"
#include "fvc/gridlines.hpp"
#include "oracles.hpp"

using fvc::Index;
using fvc::LineSegment;
using fvc::Point;

namespace {

constexpr double kPi = 3.14159265358979323846;

fvc::EdgeMap blank(Index w, Index h) {
  fvc::EdgeMap map(w, h);
  map.plane(0).setZero();
  return map;
}

void draw_horizontal(fvc::EdgeMap& map, Index y, Index x0, Index x1) {
  for (Index x = x0; x <= x1; ++x) map.at(x, y) = 255;
}

void draw_vertical(fvc::EdgeMap& map, Index x, Index y0, Index y1) {
  for (Index y = y0; y <= y1; ++y) map.at(x, y) = 255;
}

const LineSegment* longest(const std::vector<LineSegment>& segs) {
  const LineSegment* best = nullptr;
  for (const auto& s : segs) {
    if (!best || s.length() > best->length()) best = &s;
  }
  return best;
}

}  // namespace

TEST_CASE("hough rejects an empty edge map") {
  fvc::HoughParams p;
  auto map = blank(64, 64);
  CHECK_THROWS_AS(fvc::hough_lines(map, p), fvc::NoLinesFound);
}

TEST_CASE("hough recovers a single horizontal line") {
  auto map = blank(256, 256);
  draw_horizontal(map, 97, 20, 219);  // 200 px
  fvc::HoughParams p;
  p.sample_fraction = 1.0;
  const auto segs = fvc::hough_lines(map, p);
  REQUIRE(!segs.empty());
  const auto* s = longest(segs);
  const auto polar = fvc::polar_from_segment(*s);
  const double ang = fvc::segment_angle(*s);
  CHECK(std::min(ang, kPi - ang) <= 2.0 * kPi / 180.0);
  CHECK(std::fabs(std::fabs(polar.rho) - 97.0) <= 2.0);

  // The classic full accumulator lands on the same line.
  const auto peak = oracle::hough_peak(map, 1.0, 1.0);
  CHECK(std::fabs(peak.theta - kPi / 2) <= 2.0 * kPi / 180.0);
  CHECK(std::fabs(peak.rho - 97.0) <= 2.0);
}

TEST_CASE("detection sits within one bin of the oracle peak") {
  auto map = blank(200, 200);
  draw_vertical(map, 131, 10, 189);
  fvc::HoughParams p;
  p.sample_fraction = 1.0;
  const auto segs = fvc::hough_lines(map, p);
  REQUIRE(!segs.empty());
  const auto polar = fvc::polar_from_segment(*longest(segs));
  const auto peak = oracle::hough_peak(map, 1.0, 1.0);
  // Vertical line: theta 0, rho = column.
  CHECK(std::fabs(peak.theta - 0.0) <= 1.0 * kPi / 180.0);
  CHECK(std::fabs(peak.rho - 131.0) <= 1.0);
  CHECK(std::fabs(polar.theta - peak.theta) <= 1.0 * kPi / 180.0 + 1e-9);
  CHECK(std::fabs(polar.rho - peak.rho) <= 1.0 + 1e-9);
}

TEST_CASE("crossing lines come back one per orientation") {
  auto map = blank(256, 256);
  draw_horizontal(map, 80, 28, 227);
  draw_vertical(map, 120, 45, 194);
  fvc::HoughParams p;
  p.sample_fraction = 1.0;
  const auto segs = fvc::hough_lines(map, p);
  int horizontal = 0, vertical = 0;
  for (const auto& s : segs) {
    switch (fvc::classify_orientation(s)) {
      case fvc::Orientation::Horizontal: ++horizontal; break;
      case fvc::Orientation::Vertical: ++vertical; break;
      default: break;
    }
  }
  CHECK(horizontal >= 1);
  CHECK(vertical >= 1);
  const auto merged = fvc::merge_lines(segs);
  int mh = 0, mv = 0;
  for (const auto& s : merged) {
    switch (fvc::classify_orientation(s)) {
      case fvc::Orientation::Horizontal: ++mh; break;
      case fvc::Orientation::Vertical: ++mv; break;
      default: break;
    }
  }
  CHECK(mh == 1);
  CHECK(mv == 1);
}

TEST_CASE("hough is deterministic under a fixed seed") {
  auto map = blank(200, 160);
  draw_horizontal(map, 40, 10, 180);
  draw_vertical(map, 60, 8, 150);
  fvc::HoughParams p;
  p.sample_fraction = 0.5;
  p.seed = 1234;
  const auto a = fvc::hough_lines(map, p);
  const auto b = fvc::hough_lines(map, p);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].p0 - b[i].p0).norm() == 0.0);
    CHECK((a[i].p1 - b[i].p1).norm() == 0.0);
  }
}

TEST_CASE("orientation classes") {
  const LineSegment horizontal{{0, 0}, {10, 0}};
  const LineSegment vertical{{3, 0}, {3, 10}};
  const LineSegment diagonal{{0, 0}, {10, 10}};
  CHECK(fvc::classify_orientation(horizontal) ==
        fvc::Orientation::Horizontal);
  CHECK(fvc::classify_orientation(vertical) == fvc::Orientation::Vertical);
  CHECK(fvc::classify_orientation(diagonal) == fvc::Orientation::Other);

  // Stable under endpoint swap and extension.
  const LineSegment swapped{{10, 0}, {0, 0}};
  CHECK(fvc::classify_orientation(swapped) == fvc::Orientation::Horizontal);
  CHECK(fvc::classify_orientation(fvc::extend_segment(vertical, 5.0)) ==
        fvc::Orientation::Vertical);
}

TEST_CASE("merging near-duplicates") {
  const LineSegment base{{0, 10}, {100, 10}};
  SUBCASE("exact duplicates collapse") {
    const auto merged = fvc::merge_lines({base, base, base});
    CHECK(merged.size() == 1);
  }
  SUBCASE("well-separated parallels both survive") {
    const LineSegment far{{0, 60}, {100, 60}};
    const auto merged = fvc::merge_lines({base, far});
    CHECK(merged.size() == 2);
  }
  SUBCASE("near-collinear fragments keep the longest") {
    const LineSegment left{{0, 10.0}, {40, 10.0}};
    const LineSegment mid{{30, 10.4}, {110, 10.4}};  // longest
    const LineSegment right{{100, 10.2}, {150, 10.2}};
    const auto merged = fvc::merge_lines({left, mid, right});
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].length() == doctest::Approx(80.0));
  }
  SUBCASE("merging is idempotent and never grows") {
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> coord(0, 200);
    std::vector<LineSegment> segs;
    for (int i = 0; i < 30; ++i) {
      const Point a(coord(rng), coord(rng));
      const Point b(coord(rng), coord(rng));
      if ((a - b).norm() < 1.0) continue;
      segs.push_back({a, b});
    }
    const auto once = fvc::merge_lines(segs);
    CHECK(once.size() <= segs.size());
    const auto twice = fvc::merge_lines(once);
    REQUIRE(twice.size() == once.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      CHECK((once[i].p0 - twice[i].p0).norm() == 0.0);
      CHECK((once[i].p1 - twice[i].p1).norm() == 0.0);
    }
  }
}

TEST_CASE("snapping lines to a mask boundary") {
  // White above row 20, dark below: the boundary runs along y = 19.5.
  fvc::BinaryMask mask(120, 60);
  mask.plane(0).setZero();
  for (Index y = 0; y < 20; ++y) {
    for (Index x = 0; x < 120; ++x) mask.at(x, y) = 255;
  }

  SUBCASE("an offset line lands on the half-pixel boundary") {
    const auto out =
        fvc::snap_to_boundary({{10, 19}, {110, 19}}, mask);
    CHECK(std::fabs(out.p0.y() - 19.5) <= 0.2);
    CHECK(std::fabs(out.p1.y() - 19.5) <= 0.2);
    CHECK(std::fabs(out.p0.x() - 10.0) <= 0.5);
    CHECK(std::fabs(out.p1.x() - 110.0) <= 0.5);
  }
  SUBCASE("a tilted line comes back straightened") {
    const auto out =
        fvc::snap_to_boundary({{10, 18.4}, {110, 20.6}}, mask);
    CHECK(std::fabs(out.p0.y() - 19.5) <= 0.2);
    CHECK(std::fabs(out.p1.y() - 19.5) <= 0.2);
  }
  SUBCASE("a line out of reach of any transition is untouched") {
    const LineSegment far{{10, 40}, {110, 40}};
    const auto out = fvc::snap_to_boundary(far, mask);
    CHECK((out.p0 - far.p0).norm() == 0.0);
    CHECK((out.p1 - far.p1).norm() == 0.0);
  }
  SUBCASE("vertical boundaries snap too") {
    fvc::BinaryMask vmask(60, 120);
    vmask.plane(0).setZero();
    for (Index y = 0; y < 120; ++y) {
      for (Index x = 0; x < 40; ++x) vmask.at(x, y) = 255;
    }
    const auto out =
        fvc::snap_to_boundary({{41, 10}, {41, 110}}, vmask);
    CHECK(std::fabs(out.p0.x() - 39.5) <= 0.2);
    CHECK(std::fabs(out.p1.x() - 39.5) <= 0.2);
  }
}

TEST_CASE("band assignment") {
  SUBCASE("one segment takes everything") {
    const LineSegment h{{0, 30}, {100, 30}};
    const LineSegment v{{70, 5}, {70, 95}};
    const auto bands = fvc::assign_lines({h, v}, 100, 100, 1);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].horizontals.size() == 1);
    CHECK(bands[0].verticals.size() == 1);
  }
  SUBCASE("mid-height horizontal is shared by both bands") {
    const LineSegment mid{{0, 50}, {100, 50}};
    const auto bands = fvc::assign_lines({mid}, 100, 100, 2);
    REQUIRE(bands.size() == 2);
    CHECK(bands[0].horizontals.size() == 1);
    CHECK(bands[1].horizontals.size() == 1);
  }
  SUBCASE("vertical spanning one band joins that band") {
    const LineSegment v{{50, 70}, {50, 95}};  // inside band 2 of 3 (y 66..100)
    const auto bands = fvc::assign_lines({v}, 100, 100, 3);
    REQUIRE(bands.size() == 3);
    CHECK(bands[0].verticals.empty());
    CHECK(bands[1].verticals.empty());
    CHECK(bands[2].verticals.size() == 1);
  }
  SUBCASE("zero segments is rejected") {
    CHECK_THROWS_AS(fvc::assign_lines({}, 100, 100, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("inner quad construction") {
  SUBCASE("nearest lines to the band center win") {
    fvc::SegmentLines sl;
    sl.segment_index = 0;
    sl.band_y0 = 0;
    sl.band_y1 = 100;
    sl.width = 200;
    for (const double y : {0.0, 10.0, 90.0, 100.0}) {
      sl.horizontals.push_back({{0, y}, {200, y}});
    }
    sl.verticals.push_back({{0, 0}, {0, 100}});
    sl.verticals.push_back({{200, 0}, {200, 100}});
    const auto quad = fvc::inner_quad(sl);
    REQUIRE(quad.quad.vertices.size() == 4);
    CHECK((quad.quad.vertices[0] - Point(0, 10)).norm() < 1e-9);
    CHECK((quad.quad.vertices[1] - Point(200, 10)).norm() < 1e-9);
    CHECK((quad.quad.vertices[2] - Point(200, 90)).norm() < 1e-9);
    CHECK((quad.quad.vertices[3] - Point(0, 90)).norm() < 1e-9);
    CHECK(quad.quad.signed_area() > 0);
  }
  SUBCASE("a lone horizontal is not enough") {
    fvc::SegmentLines sl;
    sl.band_y0 = 0;
    sl.band_y1 = 100;
    sl.width = 200;
    sl.horizontals.push_back({{0, 10}, {200, 10}});
    sl.verticals.push_back({{0, 0}, {0, 100}});
    sl.verticals.push_back({{200, 0}, {200, 100}});
    CHECK_THROWS_AS(fvc::inner_quad(sl), fvc::InsufficientLines);
  }
  SUBCASE("a quad's own support lines reproduce its corners") {
    // Slightly skewed quadrilateral.
    const Point tl(12.5, 20.25), tr(180.75, 18.5);
    const Point br(183.25, 88.75), bl(10.0, 91.5);
    fvc::SegmentLines sl;
    sl.band_y0 = 0;
    sl.band_y1 = 110;
    sl.width = 200;
    sl.horizontals.push_back({tl, tr});
    sl.horizontals.push_back({bl, br});
    sl.verticals.push_back({tl, bl});
    sl.verticals.push_back({tr, br});
    const auto quad = fvc::inner_quad(sl);
    REQUIRE(quad.quad.vertices.size() == 4);
    CHECK((quad.quad.vertices[0] - tl).norm() < 1e-6);
    CHECK((quad.quad.vertices[1] - tr).norm() < 1e-6);
    CHECK((quad.quad.vertices[2] - br).norm() < 1e-6);
    CHECK((quad.quad.vertices[3] - bl).norm() < 1e-6);
  }
}

TEST_CASE("segment masks rasterize each quad") {
  fvc::SegmentPolygon poly;
  poly.segment_index = 0;
  poly.quad.vertices = {Point(2, 2), Point(12, 2), Point(12, 8), Point(2, 8)};
  const auto masks = fvc::segment_masks({poly}, 16, 12);
  REQUIRE(masks.size() == 1);
  Index count = 0;
  for (Index y = 0; y < 12; ++y) {
    for (Index x = 0; x < 16; ++x) {
      if (masks[0].at(x, y) != 0) ++count;
    }
  }
  CHECK(count == 10 * 6);
}
