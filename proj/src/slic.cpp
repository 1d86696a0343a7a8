#include "fvc/slic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fvc {

double grid_interval(Index n_pixels, int k) {
  if (k < 1 || static_cast<Index>(k) > n_pixels) {
    throw std::invalid_argument("grid_interval: need 1 <= k <= n_pixels");
  }
  return std::sqrt(static_cast<double>(n_pixels) / static_cast<double>(k));
}

double gradient(const LabImage& img, Index x, Index y) {
  const Index w = img.width();
  const Index h = img.height();
  const Index xl = std::max<Index>(x - 1, 0);
  const Index xr = std::min<Index>(x + 1, w - 1);
  const Index yu = std::max<Index>(y - 1, 0);
  const Index yd = std::min<Index>(y + 1, h - 1);

  double gx = 0.0;
  double gy = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double dx = static_cast<double>(img.at(xr, y, c)) - img.at(xl, y, c);
    const double dy = static_cast<double>(img.at(x, yd, c)) - img.at(x, yu, c);
    gx += dx * dx;
    gy += dy * dy;
  }
  return gx + gy;
}

std::vector<ClusterCenter> init_centers(const LabImage& img, int k) {
  const Index w = img.width();
  const Index h = img.height();
  const double s = grid_interval(img.pixel_count(), k);

  // Even spacing close to S guarantees every pixel falls inside at least
  // one center's 2Sx2S search window.
  const Index nx = std::max<Index>(1, static_cast<Index>(
                                          std::floor(w / s)));
  const Index ny = std::max<Index>(1, static_cast<Index>(
                                          std::floor(h / s)));

  std::vector<ClusterCenter> centers;
  centers.reserve(static_cast<std::size_t>(nx * ny));
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      const Index cx = std::clamp<Index>(
          static_cast<Index>(std::lround((i + 0.5) * w / nx - 0.5)), 0, w - 1);
      const Index cy = std::clamp<Index>(
          static_cast<Index>(std::lround((j + 0.5) * h / ny - 0.5)), 0, h - 1);

      // Nudge to the lowest-gradient spot in the 3x3 neighborhood; the
      // original position wins ties, then row-major order.
      Index bx = cx, by = cy;
      double best = gradient(img, cx, cy);
      for (Index yy = std::max<Index>(cy - 1, 0);
           yy <= std::min<Index>(cy + 1, h - 1); ++yy) {
        for (Index xx = std::max<Index>(cx - 1, 0);
             xx <= std::min<Index>(cx + 1, w - 1); ++xx) {
          const double g = gradient(img, xx, yy);
          if (g < best) {
            best = g;
            bx = xx;
            by = yy;
          }
        }
      }

      ClusterCenter c;
      c.l = img.at(bx, by, 0);
      c.a = img.at(bx, by, 1);
      c.b = img.at(bx, by, 2);
      c.x = static_cast<double>(bx);
      c.y = static_cast<double>(by);
      centers.push_back(c);
    }
  }
  return centers;
}

double slic_distance(const ClusterCenter& c, double l, double a, double b,
                     double x, double y, double m, double s) {
  const double dl = c.l - l;
  const double da = c.a - a;
  const double db = c.b - b;
  const double dx = c.x - x;
  const double dy = c.y - y;
  const double d_lab = std::sqrt(dl * dl + da * da + db * db);
  const double d_xy = std::sqrt(dx * dx + dy * dy);
  return d_lab + (m / s) * d_xy;
}

SuperpixelLabeling segment(const LabImage& img, const SlicParams& params,
                           SlicDiagnostics* diag) {
  if (params.k < 1 || params.m <= 0.0 || params.max_iters < 1) {
    throw std::invalid_argument("segment: invalid SLIC parameters");
  }
  const Index w = img.width();
  const Index h = img.height();
  const double s = grid_interval(img.pixel_count(), params.k);

  std::vector<ClusterCenter> centers = init_centers(img, params.k);
  const int n = static_cast<int>(centers.size());

  SuperpixelLabeling::LabelPlane labels =
      SuperpixelLabeling::LabelPlane::Constant(h, w, -1);
  Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> dist(
      h, w);

  if (diag) diag->iterations.clear();

  for (int iter = 0; iter < params.max_iters; ++iter) {
    SlicIteration info;

    // Seed every pixel with its previous assignment under the freshly
    // moved centers; a sweep can then only improve on it.
    if (iter == 0) {
      dist.setConstant(std::numeric_limits<double>::infinity());
      info.energy_before = std::numeric_limits<double>::quiet_NaN();
    } else {
      for (Index y = 0; y < h; ++y) {
        for (Index x = 0; x < w; ++x) {
          const ClusterCenter& c = centers[labels(y, x)];
          dist(y, x) = slic_distance(c, img.at(x, y, 0), img.at(x, y, 1),
                                     img.at(x, y, 2), static_cast<double>(x),
                                     static_cast<double>(y), params.m, s);
        }
      }
      info.energy_before = dist.sum();
    }

    for (int j = 0; j < n; ++j) {
      const ClusterCenter& c = centers[j];
      const Index x0 = std::max<Index>(0, static_cast<Index>(
                                              std::floor(c.x - s)));
      const Index x1 = std::min<Index>(w - 1, static_cast<Index>(
                                                  std::ceil(c.x + s)));
      const Index y0 = std::max<Index>(0, static_cast<Index>(
                                              std::floor(c.y - s)));
      const Index y1 = std::min<Index>(h - 1, static_cast<Index>(
                                                  std::ceil(c.y + s)));
      for (Index y = y0; y <= y1; ++y) {
        for (Index x = x0; x <= x1; ++x) {
          const double d = slic_distance(
              c, img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2),
              static_cast<double>(x), static_cast<double>(y), params.m, s);
          if (d < dist(y, x) ||
              (d == dist(y, x) && j < labels(y, x))) {
            dist(y, x) = d;
            labels(y, x) = j;
          }
        }
      }
    }
    if (iter == 0) {
      // The seed grid's windows cover the image, but a perturbed center at
      // very small S could in principle strand a pixel; sweep those up.
      for (Index y = 0; y < h; ++y) {
        for (Index x = 0; x < w; ++x) {
          if (labels(y, x) >= 0) continue;
          for (int j = 0; j < n; ++j) {
            const double d = slic_distance(
                centers[j], img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2),
                static_cast<double>(x), static_cast<double>(y), params.m, s);
            if (d < dist(y, x)) {
              dist(y, x) = d;
              labels(y, x) = j;
            }
          }
        }
      }
    }
    info.energy_after = dist.sum();

    // Mean [L,A,B,X,Y] per cluster; empty clusters keep their position.
    std::vector<std::array<double, 6>> acc(
        static_cast<std::size_t>(n), {0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    for (Index y = 0; y < h; ++y) {
      for (Index x = 0; x < w; ++x) {
        std::array<double, 6>& a = acc[labels(y, x)];
        a[0] += img.at(x, y, 0);
        a[1] += img.at(x, y, 1);
        a[2] += img.at(x, y, 2);
        a[3] += static_cast<double>(x);
        a[4] += static_cast<double>(y);
        a[5] += 1.0;
      }
    }
    double motion = 0.0;
    for (int j = 0; j < n; ++j) {
      const std::array<double, 6>& a = acc[j];
      if (a[5] == 0.0) continue;
      ClusterCenter next{a[0] / a[5], a[1] / a[5], a[2] / a[5], a[3] / a[5],
                         a[4] / a[5]};
      motion += std::hypot(next.x - centers[j].x, next.y - centers[j].y);
      centers[j] = next;
    }
    motion /= static_cast<double>(n);
    info.center_motion = motion;
    if (diag) diag->iterations.push_back(info);

    if (motion < params.residual_eps) break;
  }

  SuperpixelLabeling out;
  out.labels = std::move(labels);
  out.n_labels = n;
  out.centers = std::move(centers);
  enforce_connectivity(img, out);
  return out;
}

void enforce_connectivity(const LabImage& img, SuperpixelLabeling& labeling) {
  SuperpixelLabeling::LabelPlane& labels = labeling.labels;
  const Index h = labels.rows();
  const Index w = labels.cols();
  const Index n_px = w * h;

  // Pass 1: carve the labeling into 4-connected components.
  SuperpixelLabeling::LabelPlane comp =
      SuperpixelLabeling::LabelPlane::Constant(h, w, -1);
  std::vector<Index> comp_size;
  std::vector<std::vector<std::int32_t>> comp_adj;
  std::deque<std::pair<Index, Index>> queue;

  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      if (comp(y, x) >= 0) continue;
      const std::int32_t id = static_cast<std::int32_t>(comp_size.size());
      const std::int32_t lab = labels(y, x);
      comp_size.push_back(0);
      comp_adj.emplace_back();
      comp(y, x) = id;
      queue.emplace_back(x, y);
      while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop_front();
        ++comp_size[id];
        constexpr std::array<std::array<int, 2>, 4> kN4 = {
            {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
        for (const auto& d : kN4) {
          const Index nx = cx + d[0];
          const Index ny = cy + d[1];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          if (labels(ny, nx) != lab) {
            if (comp(ny, nx) >= 0 && comp(ny, nx) != id) {
              comp_adj[id].push_back(comp(ny, nx));
              comp_adj[comp(ny, nx)].push_back(id);
            }
            continue;
          }
          if (comp(ny, nx) >= 0) continue;
          comp(ny, nx) = id;
          queue.emplace_back(nx, ny);
        }
      }
    }
  }

  const std::size_t n_comp = comp_size.size();
  const Index denom = std::max(1, labeling.n_labels);
  const Index min_size = std::max<Index>(1, (n_px / denom) / 4);

  // Pass 2: absorb undersized components into their largest neighbor
  // (pre-merge sizes; smallest id breaks ties), following chains of
  // already-absorbed neighbors to a live representative.
  std::vector<std::int32_t> parent(n_comp);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::int32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };

  for (std::size_t i = 0; i < n_comp; ++i) {
    if (comp_size[i] >= min_size) continue;
    std::int32_t best = -1;
    Index best_size = -1;
    for (const std::int32_t adj : comp_adj[i]) {
      const std::int32_t rep = find(adj);
      if (rep == static_cast<std::int32_t>(i)) continue;
      if (comp_size[adj] > best_size ||
          (comp_size[adj] == best_size && rep < best)) {
        best_size = comp_size[adj];
        best = rep;
      }
    }
    if (best >= 0) parent[static_cast<std::int32_t>(i)] = best;
  }

  // Pass 3: rewrite labels compacted in scan order and rebuild centers.
  std::vector<std::int32_t> new_label(n_comp, -1);
  std::int32_t next = 0;
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      const std::int32_t rep = find(comp(y, x));
      if (new_label[rep] < 0) new_label[rep] = next++;
      labels(y, x) = new_label[rep];
    }
  }

  std::vector<std::array<double, 6>> acc(
      static_cast<std::size_t>(next), {0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      std::array<double, 6>& a = acc[labels(y, x)];
      a[0] += img.at(x, y, 0);
      a[1] += img.at(x, y, 1);
      a[2] += img.at(x, y, 2);
      a[3] += static_cast<double>(x);
      a[4] += static_cast<double>(y);
      a[5] += 1.0;
    }
  }
  labeling.centers.resize(static_cast<std::size_t>(next));
  for (std::int32_t j = 0; j < next; ++j) {
    const std::array<double, 6>& a = acc[j];
    labeling.centers[j] = {a[0] / a[5], a[1] / a[5], a[2] / a[5], a[3] / a[5],
                           a[4] / a[5]};
  }
  labeling.n_labels = next;
}

}  // namespace fvc
