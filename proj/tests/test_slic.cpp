#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "fvc/color.hpp"
#include "fvc/slic.hpp"

using fvc::Index;

namespace {

fvc::LabImage uniform_lab(Index w, Index h, float l = 50.0f) {
  fvc::LabImage img(w, h);
  img.plane(0).setConstant(l);
  img.plane(1).setZero();
  img.plane(2).setZero();
  return img;
}

// Counts 4-connected components per label; a well-formed labeling has
// exactly one per label.
int component_count(const fvc::SuperpixelLabeling& labeling) {
  const auto& labels = labeling.labels;
  const Index h = labels.rows(), w = labels.cols();
  Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic,
               Eigen::RowMajor>
      seen(h, w);
  seen.setZero();
  int components = 0;
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      if (seen(y, x)) continue;
      ++components;
      const std::int32_t label = labels(y, x);
      std::queue<std::pair<Index, Index>> frontier;
      frontier.emplace(x, y);
      seen(y, x) = 1;
      while (!frontier.empty()) {
        const auto [cx, cy] = frontier.front();
        frontier.pop();
        const Index nx4[] = {cx + 1, cx - 1, cx, cx};
        const Index ny4[] = {cy, cy, cy + 1, cy - 1};
        for (int i = 0; i < 4; ++i) {
          const Index nx = nx4[i], ny = ny4[i];
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          if (seen(ny, nx) || labels(ny, nx) != label) continue;
          seen(ny, nx) = 1;
          frontier.emplace(nx, ny);
        }
      }
    }
  }
  return components;
}

void check_partition(const fvc::SuperpixelLabeling& labeling, int k) {
  REQUIRE(labeling.n_labels >= 1);
  CHECK(labeling.n_labels <= 2 * k);
  std::vector<Index> population(labeling.n_labels, 0);
  for (Index y = 0; y < labeling.labels.rows(); ++y) {
    for (Index x = 0; x < labeling.labels.cols(); ++x) {
      const std::int32_t label = labeling.labels(y, x);
      REQUIRE(label >= 0);
      REQUIRE(label < labeling.n_labels);
      ++population[static_cast<std::size_t>(label)];
    }
  }
  for (const Index pop : population) CHECK(pop >= 1);
  CHECK(labeling.centers.size() ==
        static_cast<std::size_t>(labeling.n_labels));
}

}  // namespace

TEST_CASE("grid interval arithmetic") {
  CHECK(fvc::grid_interval(90000, 900) == doctest::Approx(10.0));
  CHECK(fvc::grid_interval(12, 12) == doctest::Approx(1.0));
  CHECK(fvc::grid_interval(3000000, 300) == doctest::Approx(100.0));
  CHECK_THROWS_AS(fvc::grid_interval(10, 11), std::invalid_argument);
  CHECK_THROWS_AS(fvc::grid_interval(10, 0), std::invalid_argument);
}

TEST_CASE("gradient of flat and ramp images") {
  const auto flat = uniform_lab(9, 7);
  for (Index y = 0; y < 7; ++y) {
    for (Index x = 0; x < 9; ++x) {
      CHECK(fvc::gradient(flat, x, y) == doctest::Approx(0.0));
    }
  }

  fvc::LabImage ramp(9, 7);
  for (Index y = 0; y < 7; ++y) {
    for (Index x = 0; x < 9; ++x) {
      ramp.at(x, y, 0) = static_cast<float>(x);
      ramp.at(x, y, 1) = 0.0f;
      ramp.at(x, y, 2) = 0.0f;
    }
  }
  // Interior: horizontal central difference is 2 in L, squared -> 4.
  for (Index y = 1; y < 6; ++y) {
    for (Index x = 1; x < 8; ++x) {
      CHECK(fvc::gradient(ramp, x, y) == doctest::Approx(4.0));
    }
  }
}

TEST_CASE("seed centers start on the grid and chase low gradient") {
  SUBCASE("uniform image keeps the grid") {
    const auto img = uniform_lab(30, 30);
    const auto centers = fvc::init_centers(img, 9);
    REQUIRE(centers.size() == 9);
    // 3x3 grid: rows and columns half a cell in, spaced exactly w/3.
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) {
        const auto& c = centers[static_cast<std::size_t>(j * 3 + i)];
        CHECK(c.x == centers[static_cast<std::size_t>(i)].x);
        CHECK(c.y == centers[static_cast<std::size_t>(3 * j)].y);
        if (i > 0) {
          CHECK(c.x - centers[static_cast<std::size_t>(j * 3 + i - 1)].x ==
                doctest::Approx(10.0));
        }
        if (j > 0) {
          CHECK(c.y - centers[static_cast<std::size_t>((j - 1) * 3 + i)].y ==
                doctest::Approx(10.0));
        }
      }
    }
    CHECK(centers[0].x >= 4.0);
    CHECK(centers[0].x <= 5.0);
  }
  SUBCASE("single center lands near the middle") {
    const auto img = uniform_lab(21, 21);
    const auto centers = fvc::init_centers(img, 1);
    REQUIRE(centers.size() == 1);
    CHECK(std::fabs(centers[0].x - 10.0) <= 1.5);
    CHECK(std::fabs(centers[0].y - 10.0) <= 1.5);
  }
  SUBCASE("a flat pit next to the seed pulls it over") {
    // Noisy field everywhere except a flat 3x3 pocket one pixel away
    // from the seed point of a k=1 grid.
    fvc::LabImage img(9, 9);
    std::mt19937 rng(41);
    std::uniform_real_distribution<float> u(0, 40);
    for (Index y = 0; y < 9; ++y) {
      for (Index x = 0; x < 9; ++x) {
        img.at(x, y, 0) = u(rng);
        img.at(x, y, 1) = u(rng);
        img.at(x, y, 2) = u(rng);
      }
    }
    const auto grid_seed = fvc::init_centers(uniform_lab(9, 9), 1);
    REQUIRE(grid_seed.size() == 1);
    const Index sx = static_cast<Index>(std::lround(grid_seed[0].x));
    const Index sy = static_cast<Index>(std::lround(grid_seed[0].y));
    // Flatten a 3x3 pocket centered one pixel right of the seed. The
    // pocket's middle gets gradient zero, while the seed itself keeps a
    // noisy left neighbor and therefore a nonzero gradient.
    for (Index y = sy - 1; y <= sy + 1; ++y) {
      for (Index x = sx; x <= sx + 2; ++x) {
        img.at(x, y, 0) = 5.0f;
        img.at(x, y, 1) = 0.0f;
        img.at(x, y, 2) = 0.0f;
      }
    }
    const auto centers = fvc::init_centers(img, 1);
    REQUIRE(centers.size() == 1);
    CHECK(centers[0].x == doctest::Approx(sx + 1.0));
    CHECK(centers[0].y == doctest::Approx(static_cast<double>(sy)));
  }
}

TEST_CASE("slic distance formula") {
  fvc::ClusterCenter c;
  c.l = 10;
  c.a = -3;
  c.b = 7;
  c.x = 5;
  c.y = 5;
  CHECK(fvc::slic_distance(c, 10, -3, 7, 5, 5, 10, 10) ==
        doctest::Approx(0.0));
  // Pure spatial offset d scales by m/S.
  CHECK(fvc::slic_distance(c, 10, -3, 7, 8, 9, 10, 10) ==
        doctest::Approx(5.0));
  // Pure color offset passes through.
  CHECK(fvc::slic_distance(c, 13, 1, 7, 5, 5, 10, 10) ==
        doctest::Approx(5.0));
  // Doubling m doubles exactly the spatial term.
  const double single = fvc::slic_distance(c, 10, -3, 7, 8, 9, 10, 10);
  const double doubled = fvc::slic_distance(c, 10, -3, 7, 8, 9, 20, 10);
  CHECK(doubled == doctest::Approx(2.0 * single));
}

TEST_CASE("one cluster swallows the image") {
  const auto img = uniform_lab(16, 12);
  fvc::SlicParams params;
  params.k = 1;
  const auto labeling = fvc::segment(img, params);
  CHECK(labeling.n_labels == 1);
  CHECK((labeling.labels == 0).all());
}

TEST_CASE("four solid quadrants separate cleanly") {
  const Index w = 80, h = 80;
  fvc::Rgb8Image rgb(w, h);
  const std::uint8_t palette[4][3] = {
      {200, 40, 40}, {40, 200, 40}, {40, 40, 200}, {220, 220, 60}};
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      const int q = (x >= w / 2) + 2 * (y >= h / 2);
      for (int c = 0; c < 3; ++c) rgb.at(x, y, c) = palette[q][c];
    }
  }
  const auto lab = fvc::rgb_to_lab(rgb);
  fvc::SlicParams params;
  params.k = 4;
  const auto labeling = fvc::segment(lab, params);
  check_partition(labeling, 4);

  // Majority label per quadrant, then count agreement.
  std::vector<std::vector<Index>> votes(
      4, std::vector<Index>(static_cast<std::size_t>(labeling.n_labels), 0));
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      const int q = (x >= w / 2) + 2 * (y >= h / 2);
      ++votes[static_cast<std::size_t>(q)]
             [static_cast<std::size_t>(labeling.labels(y, x))];
    }
  }
  Index agree = 0;
  for (int q = 0; q < 4; ++q) {
    agree += *std::max_element(votes[static_cast<std::size_t>(q)].begin(),
                               votes[static_cast<std::size_t>(q)].end());
  }
  CHECK(static_cast<double>(agree) >= 0.99 * w * h);
}

TEST_CASE("segmentation is deterministic") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> u8(0, 255);
  fvc::Rgb8Image rgb(60, 40);
  for (Index y = 0; y < 40; ++y) {
    for (Index x = 0; x < 60; ++x) {
      for (int c = 0; c < 3; ++c) {
        rgb.at(x, y, c) = static_cast<std::uint8_t>(u8(rng));
      }
    }
  }
  const auto lab = fvc::rgb_to_lab(rgb);
  fvc::SlicParams params;
  params.k = 40;
  const auto a = fvc::segment(lab, params);
  const auto b = fvc::segment(lab, params);
  CHECK(a.n_labels == b.n_labels);
  CHECK((a.labels == b.labels).all());
  for (std::size_t i = 0; i < a.centers.size(); ++i) {
    CHECK(a.centers[i].l == b.centers[i].l);
    CHECK(a.centers[i].x == b.centers[i].x);
    CHECK(a.centers[i].y == b.centers[i].y);
  }
}

TEST_CASE("labels partition the image into connected pieces") {
  // A smooth blobby field rather than white noise, so clusters resemble
  // real image structure.
  const Index w = 72, h = 54;
  fvc::LabImage img(w, h);
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      const double fx = static_cast<double>(x) / w;
      const double fy = static_cast<double>(y) / h;
      img.at(x, y, 0) =
          static_cast<float>(50 + 30 * std::sin(6.3 * fx) * std::cos(4.4 * fy));
      img.at(x, y, 1) = static_cast<float>(20 * std::sin(9.1 * fx * fy));
      img.at(x, y, 2) = static_cast<float>(15 * std::cos(5.7 * fy));
    }
  }
  fvc::SlicParams params;
  params.k = 24;
  fvc::SlicDiagnostics diag;
  const auto labeling = fvc::segment(img, params, &diag);
  check_partition(labeling, params.k);
  CHECK(component_count(labeling) == labeling.n_labels);

  // Each assignment sweep may only lower the energy of the standing
  // assignment measured under the same centers.
  REQUIRE(!diag.iterations.empty());
  for (std::size_t i = 0; i < diag.iterations.size(); ++i) {
    const auto& it = diag.iterations[i];
    if (i == 0) {
      CHECK(std::isnan(it.energy_before));
    } else {
      CHECK(it.energy_after <= it.energy_before + 1e-9);
    }
  }
}

TEST_CASE("connectivity pass absorbs orphans and compacts labels") {
  const auto img = uniform_lab(12, 8);
  fvc::SuperpixelLabeling labeling;
  labeling.labels.resize(8, 12);
  labeling.labels.setZero();
  // Right half is label 1, with a single label-0 orphan inside it.
  for (Index y = 0; y < 8; ++y) {
    for (Index x = 6; x < 12; ++x) labeling.labels(y, x) = 1;
  }
  labeling.labels(4, 9) = 0;
  labeling.n_labels = 2;
  labeling.centers.resize(2);
  fvc::enforce_connectivity(img, labeling);
  CHECK(labeling.n_labels == 2);
  CHECK(labeling.labels(4, 9) == labeling.labels(4, 8));
  CHECK(component_count(labeling) == 2);

  // An already-consistent labeling passes through unchanged.
  fvc::SuperpixelLabeling clean;
  clean.labels.resize(8, 12);
  for (Index y = 0; y < 8; ++y) {
    for (Index x = 0; x < 12; ++x) clean.labels(y, x) = x < 6 ? 0 : 1;
  }
  clean.n_labels = 2;
  clean.centers.resize(2);
  const auto before = clean.labels;
  fvc::enforce_connectivity(img, clean);
  CHECK((clean.labels == before).all());
}
