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

#ifndef SKELPROP_METRICS_HPP
#define SKELPROP_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "skelprop/skeleton.hpp"
#include "skelprop/volume.hpp"

namespace skelprop {

// 26-connected component labels (0 = background, components numbered
// 1.. in order of their smallest voxel index) via union-find.
std::vector<std::uint32_t> label_components(const BinaryMask& mask, std::size_t* count = nullptr);

// Keeps the largest 26-connected component; ties go to the component
// with the smallest minimum linear index. Empty in, empty out.
BinaryMask largest_component(const BinaryMask& mask);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

// Ratios with a zero denominator are reported as 1 for dsc/tpr (nothing
// to find, nothing missed) and 0 for fpr.
struct VolumetricMetrics {
  double dsc = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
  ConfusionCounts counts;
};

VolumetricMetrics volumetric_metrics(const BinaryMask& pred, const BinaryMask& ref);

enum class LengthMode { Millimeters, Voxels };

inline constexpr double kBranchDetectedFraction = 0.8;

struct TopologyMetrics {
  double bd = 0.0;
  double bd_star = 0.0;
  double td = 0.0;
  std::size_t branches = 0;
  std::size_t detected = 0;       // f >= 0.8
  std::size_t detected_any = 0;   // at least one voxel
  double reference_length = 0.0;
  double detected_length = 0.0;
};

// Per reference branch, f = covered fraction of its voxels (chain plus
// shared junction voxels). TD sums chain steps whose two voxels are both
// covered, divided by the total chain length.
TopologyMetrics topology_metrics(const BinaryMask& pred, const SkeletonGraph& reference,
                                 LengthMode mode = LengthMode::Millimeters,
                                 double bd_fraction = kBranchDetectedFraction);

struct MetricsReport {
  VolumetricMetrics volumetric;
  TopologyMetrics topology;
};

// Reduces pred to its largest component, then computes both metric sets.
MetricsReport evaluate_segmentation(const BinaryMask& pred, const BinaryMask& ref_mask,
                                    const SkeletonGraph& ref_skeleton,
                                    LengthMode mode = LengthMode::Millimeters);

}  // namespace skelprop

#endif  // SKELPROP_METRICS_HPP
