#include "fvc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fvc {

namespace {

void validate(const SceneSpec& spec) {
  if (spec.width < 64 || spec.height < 64) {
    throw std::invalid_argument("render: canvas must be at least 64x64");
  }
  if (spec.n_segments < 1) {
    throw std::invalid_argument("render: need at least one segment");
  }
  if (spec.bar_width < 3) {
    throw std::invalid_argument("render: bar_width must be >= 3 px");
  }
  for (const SegmentVegetation& v : spec.vegetation) {
    if (v.fraction < 0.0 || v.fraction > 1.0) {
      throw std::invalid_argument("render: fraction outside [0, 1]");
    }
  }
}

void fill_rect(Rgb8Image& img, Index x0, Index y0, Index x1, Index y1,
               const Eigen::Vector3i& color) {
  for (Index y = y0; y < y1; ++y) {
    for (Index x = x0; x < x1; ++x) {
      for (int c = 0; c < 3; ++c) {
        img.at(x, y, c) = static_cast<std::uint8_t>(color[c]);
      }
    }
  }
}

}  // namespace

SceneLayout scene_layout(const SceneSpec& spec) {
  validate(spec);
  const Index b = spec.bar_width;
  const int n = spec.n_segments;

  Index fw = static_cast<Index>(std::lround(spec.frame_w_frac * spec.width));
  Index fh = static_cast<Index>(std::lround(spec.frame_h_frac * spec.height));
  fw = std::min(fw, spec.width);
  const Index opening_h = (fh - (n + 1) * b) / n;
  if (opening_h < 4 || fw - 2 * b < 4) {
    throw std::invalid_argument("render: frame too small for its openings");
  }
  fh = static_cast<Index>(n) * opening_h + (n + 1) * b;  // exact division

  SceneLayout lay;
  lay.frame_x0 = (spec.width - fw) / 2;
  lay.frame_y0 = (spec.height - fh) / 2;
  lay.frame_x1 = lay.frame_x0 + fw;
  lay.frame_y1 = lay.frame_y0 + fh;
  for (int i = 0; i < n; ++i) {
    const Index y0 = lay.frame_y0 + b + i * (opening_h + b);
    lay.openings.push_back(
        {lay.frame_x0 + b, y0, lay.frame_x1 - b, y0 + opening_h});
  }
  return lay;
}

Homography rotation_about_center(double deg, double cx, double cy) {
  const double rad = deg * 3.14159265358979323846 / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  Homography h;
  h << c, -s, cx - c * cx + s * cy,  //
      s, c, cy - s * cx - c * cy,    //
      0, 0, 1;
  return h;
}

std::pair<Rgb8Image, GroundTruth> render(const SceneSpec& spec) {
  const SceneLayout lay = scene_layout(spec);
  Rgb8Image img(spec.width, spec.height);

  // Background with seeded speckle.
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> noise(
      -static_cast<int>(std::lround(spec.noise_amplitude)),
      static_cast<int>(std::lround(spec.noise_amplitude)));
  for (Index y = 0; y < spec.height; ++y) {
    for (Index x = 0; x < spec.width; ++x) {
      const int n = spec.noise_amplitude > 0.0 ? noise(rng) : 0;
      for (int c = 0; c < 3; ++c) {
        img.at(x, y, c) = static_cast<std::uint8_t>(
            std::clamp(spec.background[c] + n, 0, 255));
      }
    }
  }

  // Frame: solid outer rect, then cut the openings back to background.
  fill_rect(img, lay.frame_x0, lay.frame_y0, lay.frame_x1, lay.frame_y1,
            spec.frame_color);
  for (const SceneLayout::Rect& o : lay.openings) {
    fill_rect(img, o.x0, o.y0, o.x1, o.y1, spec.background);
  }

  GroundTruth gt;
  for (std::size_t i = 0; i < lay.openings.size(); ++i) {
    const SceneLayout::Rect& o = lay.openings[i];
    SegmentTruth truth;
    truth.opening_pixels = o.area();

    const SegmentVegetation veg =
        i < spec.vegetation.size() ? spec.vegetation[i] : SegmentVegetation{};

    if (!veg.polygons.empty()) {
      // Explicit shapes: rasterize, clip to the opening, count what lands.
      BinaryMask painted(spec.width, spec.height);
      painted.plane(0).setZero();
      for (const Polygon& poly : veg.polygons) {
        const BinaryMask m = rasterize_polygon(poly, spec.width, spec.height);
        painted.plane(0) = painted.plane(0).max(m.plane(0));
      }
      for (Index y = o.y0; y < o.y1; ++y) {
        for (Index x = o.x0; x < o.x1; ++x) {
          if (painted.at(x, y) == 0) continue;
          ++truth.vegetation_pixels;
          for (int c = 0; c < 3; ++c) {
            img.at(x, y, c) =
                static_cast<std::uint8_t>(spec.vegetation_color[c]);
          }
        }
      }
    } else {
      // A block filled column by column hits the target count exactly,
      // flush against the bars: the cover either reaches the frame or it
      // does not exist there, never a synthetic sliver of soil too narrow
      // to stand on its own. Alternate sides so scenes aren't uniformly
      // left-heavy.
      const Index target = static_cast<Index>(
          std::lround(veg.fraction * static_cast<double>(o.area())));
      const Index h = o.y1 - o.y0;
      const bool from_left = i % 2 == 0;
      Index remaining = target;
      Index col = 0;
      while (remaining > 0) {
        const Index x = from_left ? o.x0 + col : o.x1 - 1 - col;
        const Index run = std::min(remaining, h);
        for (Index y = o.y0; y < o.y0 + run; ++y) {
          for (int c = 0; c < 3; ++c) {
            img.at(x, y, c) =
                static_cast<std::uint8_t>(spec.vegetation_color[c]);
          }
        }
        remaining -= run;
        ++col;
      }
      truth.vegetation_pixels = target;
    }

    truth.fraction = static_cast<double>(truth.vegetation_pixels) /
                     static_cast<double>(truth.opening_pixels);
    // Corners on the bar/opening interface, half a pixel outside the
    // outermost opening pixel centers, so the quad rasterizes to exactly
    // opening_pixels.
    truth.quad = {Point(o.x0 - 0.5, o.y0 - 0.5),
                  Point(o.x1 - 0.5, o.y0 - 0.5),
                  Point(o.x1 - 0.5, o.y1 - 0.5),
                  Point(o.x0 - 0.5, o.y1 - 0.5)};
    gt.segments.push_back(truth);
  }

  if (spec.tilt_deg != 0.0) {
    const Homography pose = rotation_about_center(
        spec.tilt_deg, 0.5 * (spec.width - 1), 0.5 * (spec.height - 1));
    img = warp_perspective(img, pose, spec.width, spec.height);
    for (SegmentTruth& truth : gt.segments) {
      for (Point& p : truth.quad) p = apply_homography(pose, p);
    }
  }

  return {std::move(img), std::move(gt)};
}

}  // namespace fvc
