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

#include "skelprop/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace skelprop {

namespace {

class DisjointSets {
 public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller label wins so roots are the earliest-seen provisional label.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

std::vector<std::uint32_t> label_components(const BinaryMask& mask, std::size_t* count) {
  const VolumeGeometry& g = mask.geometry();
  const auto& d = g.dims;
  std::vector<std::uint32_t> labels(mask.size(), 0);
  DisjointSets sets;
  sets.make();  // label 0 = background

  // Raster scan; the 13 already-visited 26-neighbors precede the voxel.
  for (std::size_t z = 0; z < d[2]; ++z)
    for (std::size_t y = 0; y < d[1]; ++y)
      for (std::size_t x = 0; x < d[0]; ++x) {
        const std::size_t i = g.linear(x, y, z);
        if (!mask[i]) continue;
        std::uint32_t current = 0;
        for (int dz = -1; dz <= 0; ++dz)
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              if (dz == 0 && (dy > 0 || (dy == 0 && dx >= 0))) continue;
              const auto nx = static_cast<std::ptrdiff_t>(x) + dx;
              const auto ny = static_cast<std::ptrdiff_t>(y) + dy;
              const auto nz = static_cast<std::ptrdiff_t>(z) + dz;
              if (!g.contains(nx, ny, nz)) continue;
              const std::uint32_t l = labels[g.linear(nx, ny, nz)];
              if (l == 0) continue;
              if (current == 0) {
                current = l;
              } else {
                sets.unite(current, l);
              }
            }
        labels[i] = current != 0 ? current : sets.make();
      }

  std::vector<std::uint32_t> remap(sets.size(), 0);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) continue;
    const std::uint32_t root = sets.find(labels[i]);
    if (remap[root] == 0) remap[root] = ++next;
    labels[i] = remap[root];
  }
  if (count != nullptr) *count = next;
  return labels;
}

BinaryMask largest_component(const BinaryMask& mask) {
  std::size_t count = 0;
  const auto labels = label_components(mask, &count);
  BinaryMask out(mask.geometry());
  if (count == 0) return out;
  std::vector<std::size_t> sizes(count + 1, 0);
  for (auto l : labels) ++sizes[l];
  // Components are numbered by first (smallest) voxel index, so the first
  // maximum is the tie-break winner.
  std::uint32_t best = 1;
  for (std::uint32_t l = 2; l <= count; ++l) {
    if (sizes[l] > sizes[best]) best = l;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = labels[i] == best ? 1 : 0;
  return out;
}

VolumetricMetrics volumetric_metrics(const BinaryMask& pred, const BinaryMask& ref) {
  require_same_geometry(pred.geometry(), ref.geometry(), "volumetric metrics");
  VolumetricMetrics m;
  auto& c = m.counts;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] != 0;
    const bool r = ref[i] != 0;
    if (p && r) {
      ++c.tp;
    } else if (p) {
      ++c.fp;
    } else if (r) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  const auto tp = static_cast<double>(c.tp);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);
  const auto tn = static_cast<double>(c.tn);
  m.dsc = (c.tp + c.fp + c.fn) == 0 ? 1.0 : 2.0 * tp / (2.0 * tp + fp + fn);
  m.tpr = (c.tp + c.fn) == 0 ? 1.0 : tp / (tp + fn);
  m.fpr = (c.fp + c.tn) == 0 ? 0.0 : fp / (fp + tn);
  return m;
}

TopologyMetrics topology_metrics(const BinaryMask& pred, const SkeletonGraph& reference,
                                 LengthMode mode, double bd_fraction) {
  require_same_geometry(pred.geometry(), reference.geometry(), "topology metrics");
  if (reference.branches().empty()) throw InvalidArgument("topology metrics: empty skeleton");

  TopologyMetrics t;
  t.branches = reference.branches().size();
  for (const auto& b : reference.branches()) {
    std::vector<std::size_t> members(b.voxels.begin(), b.voxels.end());
    members.insert(members.end(), b.shared.begin(), b.shared.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::size_t hit = 0;
    for (std::size_t v : members) hit += pred[v] ? 1 : 0;
    const double f = static_cast<double>(hit) / static_cast<double>(members.size());
    if (f >= bd_fraction) ++t.detected;
    if (hit > 0) ++t.detected_any;

    for (std::size_t s = 1; s < b.voxels.size(); ++s) {
      const double len = mode == LengthMode::Millimeters
                             ? step_length(reference.geometry(), b.voxels[s - 1], b.voxels[s])
                             : 1.0;
      t.reference_length += len;
      if (pred[b.voxels[s - 1]] && pred[b.voxels[s]]) t.detected_length += len;
    }
  }
  t.bd = static_cast<double>(t.detected) / static_cast<double>(t.branches);
  t.bd_star = static_cast<double>(t.detected_any) / static_cast<double>(t.branches);
  if (t.reference_length > 0.0) {
    t.td = t.detected_length / t.reference_length;
  } else {
    // Single-voxel skeleton: length is zero, coverage decides.
    t.td = t.detected_any == t.branches ? 1.0 : 0.0;
  }
  return t;
}

MetricsReport evaluate_segmentation(const BinaryMask& pred, const BinaryMask& ref_mask,
                                    const SkeletonGraph& ref_skeleton, LengthMode mode) {
  const BinaryMask kept = largest_component(pred);
  return {volumetric_metrics(kept, ref_mask), topology_metrics(kept, ref_skeleton, mode)};
}

}  // namespace skelprop
