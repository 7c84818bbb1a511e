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

#include "skelprop/distance.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "skelprop/parallel.hpp"

namespace skelprop {

void GeodesicParams::validate() const {
  if (connectivity != Connectivity::Six && connectivity != Connectivity::TwentySix) {
    throw InvalidArgument("connectivity must be 6 or 26");
  }
  if (!(spatial_weight >= 0.0) || !std::isfinite(spatial_weight)) {
    throw InvalidArgument("spatial_weight must be a nonnegative finite number");
  }
}

Connectivity parse_connectivity(int n) {
  if (n == 6) return Connectivity::Six;
  if (n == 26) return Connectivity::TwentySix;
  throw InvalidArgument("connectivity must be 6 or 26, got " + std::to_string(n));
}

const std::vector<NeighborOffset>& neighbor_offsets(Connectivity c) {
  static const std::vector<NeighborOffset> six = {
      {-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}};
  static const std::vector<NeighborOffset> twenty_six = [] {
    std::vector<NeighborOffset> out = six;
    for (int order = 2; order <= 3; ++order) {
      for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (std::abs(dx) + std::abs(dy) + std::abs(dz) == order) {
              out.push_back({dx, dy, dz});
            }
          }
    }
    return out;
  }();
  return c == Connectivity::Six ? six : twenty_six;
}

double geodesic_edge_cost(float ga, float gb, const NeighborOffset& o,
                          const std::array<double, 3>& spacing, double spatial_weight) {
  double cost = std::fabs(static_cast<double>(ga) - static_cast<double>(gb));
  if (spatial_weight > 0.0) {
    const double ex = o.dx * spacing[0];
    const double ey = o.dy * spacing[1];
    const double ez = o.dz * spacing[2];
    cost += spatial_weight * std::sqrt(ex * ex + ey * ey + ez * ez);
  }
  return cost;
}

DistanceMap geodesic_distance(const ScalarVolume& smoothed, const SkeletonAnnotation& seeds,
                              const GeodesicParams& p) {
  p.validate();
  if (seeds.empty()) throw InvalidArgument("geodesic distance needs a non-empty seed set");
  const VolumeGeometry& g = smoothed.geometry();
  require_same_geometry(g, seeds.geometry(), "geodesic distance seeds");
  for (std::size_t i = 0; i < smoothed.size(); ++i) {
    if (!std::isfinite(smoothed[i])) {
      throw InvalidArgument("geodesic distance: intensity at voxel " + std::to_string(i) +
                            " is not finite");
    }
  }

  const std::size_t n = g.voxel_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::uint8_t> settled(n, 0);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  for (std::size_t s : seeds.voxels()) {
    dist[s] = 0.0;
    heap.emplace(0.0, s);
  }

  const auto& offsets = neighbor_offsets(p.connectivity);
  while (!heap.empty()) {
    const auto [d, i] = heap.top();
    heap.pop();
    if (settled[i]) continue;
    settled[i] = 1;
    const Index3 c = g.coords(i);
    const float gi = smoothed[i];
    for (const auto& o : offsets) {
      const auto x = static_cast<std::ptrdiff_t>(c.x) + o.dx;
      const auto y = static_cast<std::ptrdiff_t>(c.y) + o.dy;
      const auto z = static_cast<std::ptrdiff_t>(c.z) + o.dz;
      if (!g.contains(x, y, z)) continue;
      const std::size_t j = g.linear(x, y, z);
      if (settled[j]) continue;
      const double nd = d + geodesic_edge_cost(gi, smoothed[j], o, g.spacing, p.spatial_weight);
      if (nd < dist[j]) {
        dist[j] = nd;
        heap.emplace(nd, j);
      }
    }
  }
  return DistanceMap(g, DistanceKind::Geodesic, std::move(dist));
}

DistanceUnits parse_units(std::string_view name) {
  if (name == "mm" || name == "millimeters") return DistanceUnits::Millimeters;
  if (name == "voxels" || name == "vox") return DistanceUnits::Voxels;
  throw InvalidArgument("units must be 'mm' or 'voxels', got '" + std::string(name) + "'");
}

void squared_distance_1d(std::span<const double> f, double h, std::span<double> out) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = f.size();
  std::vector<std::size_t> v(n);
  std::vector<double> z(n + 1);
  std::ptrdiff_t k = -1;
  auto intersect = [&](std::size_t q, std::size_t r) {
    const double pq = q * h;
    const double pr = r * h;
    return ((f[q] + pq * pq) - (f[r] + pr * pr)) / (2.0 * (pq - pr));
  };
  for (std::size_t q = 0; q < n; ++q) {
    if (!std::isfinite(f[q])) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    double s = intersect(q, v[k]);
    // z[0] is -inf, so the envelope never empties.
    while (s <= z[k]) {
      --k;
      s = intersect(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) {
    for (auto& o : out) o = kInf;
    return;
  }
  std::ptrdiff_t j = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const double pos = q * h;
    while (z[j + 1] < pos) ++j;
    const double d = pos - v[j] * h;
    out[q] = d * d + f[v[j]];
  }
}

DistanceMap euclidean_distance(const VolumeGeometry& geometry, const SkeletonAnnotation& seeds,
                               DistanceUnits units) {
  geometry.validate();
  if (seeds.empty()) throw InvalidArgument("euclidean distance needs a non-empty seed set");
  require_same_geometry(geometry, seeds.geometry(), "euclidean distance seeds");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> sq(geometry.voxel_count(), kInf);
  for (std::size_t s : seeds.voxels()) sq[s] = 0.0;

  const auto& d = geometry.dims;
  for (int axis = 0; axis < 3; ++axis) {
    const std::size_t n = d[axis];
    const std::size_t stride = axis == 0 ? 1 : axis == 1 ? d[0] : d[0] * d[1];
    const std::size_t lines = geometry.voxel_count() / n;
    const double h = units == DistanceUnits::Millimeters ? geometry.spacing[axis] : 1.0;
    parallel_for(lines, [&](std::size_t begin, std::size_t end) {
      std::vector<double> f(n);
      std::vector<double> out(n);
      for (std::size_t l = begin; l < end; ++l) {
        std::size_t base;
        if (axis == 0) {
          base = l * d[0];
        } else if (axis == 1) {
          base = (l % d[0]) + (l / d[0]) * d[0] * d[1];
        } else {
          base = l;
        }
        for (std::size_t i = 0; i < n; ++i) f[i] = sq[base + i * stride];
        squared_distance_1d(f, h, out);
        for (std::size_t i = 0; i < n; ++i) sq[base + i * stride] = out[i];
      }
    });
  }
  for (double& x : sq) x = std::sqrt(x);
  return DistanceMap(geometry, DistanceKind::Euclidean, std::move(sq));
}

}  // namespace skelprop
