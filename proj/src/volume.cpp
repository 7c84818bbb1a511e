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

#include "skelprop/volume.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skelprop {

void VolumeGeometry::validate() const {
  std::size_t total = 1;
  for (int a = 0; a < 3; ++a) {
    if (dims[a] == 0) {
      throw InvalidArgument("volume dimension " + std::to_string(a) + " is zero");
    }
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) {
      throw InvalidArgument("voxel spacing along axis " + std::to_string(a) +
                            " must be positive and finite");
    }
    if (total > std::numeric_limits<std::size_t>::max() / dims[a]) {
      throw InvalidArgument("voxel count overflows the addressable range");
    }
    total *= dims[a];
  }
}

std::string to_string(const VolumeGeometry& g) {
  std::ostringstream os;
  os << g.dims[0] << "x" << g.dims[1] << "x" << g.dims[2] << " @ (" << g.spacing[0]
     << ", " << g.spacing[1] << ", " << g.spacing[2] << ") mm";
  return os.str();
}

void require_same_geometry(const VolumeGeometry& a, const VolumeGeometry& b,
                           const char* what) {
  if (!(a == b)) {
    throw GeometryMismatch(std::string(what) + ": geometry " + to_string(a) +
                           " differs from " + to_string(b));
  }
}

const char* to_string(DistanceKind kind) noexcept {
  switch (kind) {
    case DistanceKind::Geodesic:
      return "geodesic";
    case DistanceKind::Euclidean:
      return "euclidean";
    case DistanceKind::InverseGeodesic:
      return "inverse-geodesic";
  }
  return "unknown";
}

double DistanceMap::max() const noexcept {
  double m = 0.0;
  for (double v : data()) m = std::max(m, v);
  return m;
}

SkeletonAnnotation::SkeletonAnnotation(VolumeGeometry geometry,
                                       std::vector<std::size_t> voxels)
    : geometry_(std::move(geometry)), voxels_(std::move(voxels)) {
  geometry_.validate();
  std::sort(voxels_.begin(), voxels_.end());
  const std::size_t n = geometry_.voxel_count();
  for (std::size_t i = 0; i < voxels_.size(); ++i) {
    if (voxels_[i] >= n) {
      throw InvalidArgument("skeleton voxel index " + std::to_string(voxels_[i]) +
                            " is outside " + to_string(geometry_));
    }
    if (i > 0 && voxels_[i] == voxels_[i - 1]) {
      throw InvalidArgument("duplicate skeleton voxel index " +
                            std::to_string(voxels_[i]));
    }
  }
}

SkeletonAnnotation SkeletonAnnotation::from_mask(const BinaryMask& mask) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) idx.push_back(i);
  }
  return SkeletonAnnotation(mask.geometry(), std::move(idx));
}

bool SkeletonAnnotation::contains(std::size_t index) const noexcept {
  return std::binary_search(voxels_.begin(), voxels_.end(), index);
}

BinaryMask SkeletonAnnotation::to_mask() const {
  BinaryMask m(geometry_);
  for (std::size_t i : voxels_) m[i] = 1;
  return m;
}

BinaryMask to_mask(const ScalarVolume& v) {
  BinaryMask m(v.geometry());
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = v[i] != 0.0f ? 1 : 0;
  return m;
}

MaskProposal to_proposal(const ScalarVolume& v) {
  MaskProposal p(v.geometry(), Label::Unknown);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const float c = v[i];
    if (c == 0.0f) {
      p[i] = Label::Background;
    } else if (c == 1.0f) {
      p[i] = Label::Foreground;
    } else if (c == 2.0f) {
      p[i] = Label::Unknown;
    } else {
      throw FormatError("mask proposal voxel " + std::to_string(i) +
                        " holds code " + std::to_string(c) + ", expected 0, 1 or 2");
    }
  }
  return p;
}

PredictionVolume to_prediction(const ScalarVolume& v) {
  PredictionVolume p(v.geometry());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw InvalidArgument("prediction voxel " + std::to_string(i) + " = " +
                            std::to_string(x) + " is outside [0, 1]");
    }
    p[i] = x;
  }
  return p;
}

ProposalCounts count_labels(const MaskProposal& p) {
  ProposalCounts c;
  for (Label l : p.data()) {
    switch (l) {
      case Label::Foreground:
        ++c.foreground;
        break;
      case Label::Background:
        ++c.background;
        break;
      case Label::Unknown:
        ++c.unknown;
        break;
    }
  }
  return c;
}

}  // namespace skelprop
