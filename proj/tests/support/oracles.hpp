/**
 * @license
 * Copyright 2026 The skelprop Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * Independent reference implementations used only by tests. Each one is
 * the slow, obvious algorithm for the quantity under test and shares no
 * code path with the library routine it checks.
 */

#ifndef SKELPROP_TESTS_ORACLES_HPP
#define SKELPROP_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <random>
#include <vector>

#include "skelprop/volume.hpp"

namespace skelprop::oracle {

inline std::vector<std::array<int, 3>> offsets(int connectivity) {
  std::vector<std::array<int, 3>> out;
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int l1 = std::abs(dx) + std::abs(dy) + std::abs(dz);
        if (l1 == 0) continue;
        if (connectivity == 6 && l1 != 1) continue;
        out.push_back({dx, dy, dz});
      }
  return out;
}

// Bellman-Ford over the full voxel graph: relax every directed edge until
// a sweep changes nothing.
inline std::vector<double> bellman_ford_geodesic(const ScalarVolume& img,
                                                 const std::vector<std::size_t>& seeds,
                                                 int connectivity, double spatial_weight) {
  const auto& g = img.geometry();
  const auto& d = g.dims;
  std::vector<double> dist(img.size(), std::numeric_limits<double>::infinity());
  for (auto s : seeds) dist[s] = 0.0;
  const auto offs = offsets(connectivity);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t z = 0; z < d[2]; ++z)
      for (std::size_t y = 0; y < d[1]; ++y)
        for (std::size_t x = 0; x < d[0]; ++x) {
          const std::size_t a = g.linear(x, y, z);
          if (!std::isfinite(dist[a])) continue;
          for (const auto& o : offs) {
            const long bx = static_cast<long>(x) + o[0];
            const long by = static_cast<long>(y) + o[1];
            const long bz = static_cast<long>(z) + o[2];
            if (bx < 0 || by < 0 || bz < 0 || bx >= static_cast<long>(d[0]) ||
                by >= static_cast<long>(d[1]) || bz >= static_cast<long>(d[2]))
              continue;
            const std::size_t b = g.linear(bx, by, bz);
            const double px = o[0] * g.spacing[0];
            const double py = o[1] * g.spacing[1];
            const double pz = o[2] * g.spacing[2];
            const double cost = std::fabs(double(img[a]) - double(img[b])) +
                                spatial_weight * std::sqrt(px * px + py * py + pz * pz);
            if (dist[a] + cost < dist[b]) {
              dist[b] = dist[a] + cost;
              changed = true;
            }
          }
        }
  }
  return dist;
}

// O(N * |seeds|) minimum over all seeds.
inline std::vector<double> brute_force_euclidean(const VolumeGeometry& g,
                                                 const std::vector<std::size_t>& seeds,
                                                 bool millimeters) {
  std::vector<double> out(g.voxel_count());
  const std::array<double, 3> h =
      millimeters ? g.spacing : std::array<double, 3>{1.0, 1.0, 1.0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Index3 p = g.coords(i);
    double best = std::numeric_limits<double>::infinity();
    for (auto s : seeds) {
      const Index3 q = g.coords(s);
      const double dx = (double(p.x) - double(q.x)) * h[0];
      const double dy = (double(p.y) - double(q.y)) * h[1];
      const double dz = (double(p.z) - double(q.z)) * h[2];
      best = std::min(best, dx * dx + dy * dy + dz * dz);
    }
    out[i] = std::sqrt(best);
  }
  return out;
}

// Mirror with edge repeat, written independently of the library's fold.
inline long mirror(long i, long n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

// Dense (non-separable) 3D convolution with the product kernel.
inline std::vector<double> dense_gaussian(const ScalarVolume& v, double sigma, int radius) {
  std::vector<double> w(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) sum += (w[k + radius] = std::exp(-k * k / (2 * sigma * sigma)));
  for (auto& x : w) x /= sum;
  const auto& g = v.geometry();
  const long nx = g.dims[0], ny = g.dims[1], nz = g.dims[2];
  std::vector<double> out(v.size());
  for (long z = 0; z < nz; ++z)
    for (long y = 0; y < ny; ++y)
      for (long x = 0; x < nx; ++x) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k)
          for (int j = -radius; j <= radius; ++j)
            for (int i = -radius; i <= radius; ++i) {
              acc += w[i + radius] * w[j + radius] * w[k + radius] *
                     v.at(mirror(x + i, nx), mirror(y + j, ny), mirror(z + k, nz));
            }
        out[g.linear(x, y, z)] = acc;
      }
  return out;
}

// Breadth-first flood fill labeling with 26-connectivity. Components are
// returned as sorted voxel lists in order of their smallest index.
inline std::vector<std::vector<std::size_t>> flood_fill_components(const BinaryMask& m) {
  const auto& g = m.geometry();
  std::vector<std::uint8_t> seen(m.size(), 0);
  std::vector<std::vector<std::size_t>> comps;
  const auto offs = offsets(26);
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (!m[s] || seen[s]) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      const std::size_t a = q.front();
      q.pop_front();
      comp.push_back(a);
      const Index3 p = g.coords(a);
      for (const auto& o : offs) {
        const long x = long(p.x) + o[0], y = long(p.y) + o[1], z = long(p.z) + o[2];
        if (!g.contains(x, y, z)) continue;
        const std::size_t b = g.linear(x, y, z);
        if (m[b] && !seen[b]) {
          seen[b] = 1;
          q.push_back(b);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline ScalarVolume random_volume(const VolumeGeometry& g, std::mt19937_64& rng,
                                  double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  ScalarVolume v(g);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<float>(u(rng));
  return v;
}

inline SkeletonAnnotation random_seeds(const VolumeGeometry& g, std::mt19937_64& rng,
                                       std::size_t max_count) {
  std::uniform_int_distribution<std::size_t> count(1, max_count);
  std::uniform_int_distribution<std::size_t> pick(0, g.voxel_count() - 1);
  const std::size_t n = count(rng);
  std::vector<std::size_t> idx;
  while (idx.size() < n) {
    const std::size_t c = pick(rng);
    if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
  }
  return SkeletonAnnotation(g, idx);
}

inline BinaryMask random_mask(const VolumeGeometry& g, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution b(density);
  BinaryMask m(g);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = b(rng) ? 1 : 0;
  return m;
}

inline MaskProposal random_proposal(const VolumeGeometry& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(0, 2);
  MaskProposal p(g);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<Label>(c(rng));
  return p;
}

inline PredictionVolume random_prediction(const VolumeGeometry& g, std::mt19937_64& rng,
                                          double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  PredictionVolume p(g);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = u(rng);
  return p;
}

}  // namespace skelprop::oracle

#endif  // SKELPROP_TESTS_ORACLES_HPP
