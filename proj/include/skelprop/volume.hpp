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
 * Volumetric containers shared by every stage of the pipeline.
 *
 * All volumes are dense 3D grids stored in a single linear buffer with
 * x varying fastest, then y, then z:
 *
 *     index = x + dims[0] * (y + dims[1] * z)
 *
 * Spacing is the physical voxel edge length in millimeters per axis.
 */

#ifndef SKELPROP_VOLUME_HPP
#define SKELPROP_VOLUME_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skelprop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations on arguments (bad parameters, empty seed sets...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class GeometryMismatch : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

struct Index3 {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t z = 0;

  friend bool operator==(const Index3&, const Index3&) = default;
};

struct VolumeGeometry {
  std::array<std::size_t, 3> dims{1, 1, 1};
  std::array<double, 3> spacing{1.0, 1.0, 1.0};

  VolumeGeometry() = default;
  VolumeGeometry(std::array<std::size_t, 3> d,
                 std::array<double, 3> s = {1.0, 1.0, 1.0})
      : dims(d), spacing(s) {
    validate();
  }

  // Throws InvalidArgument if dims are zero, spacing is not positive and
  // finite, or the voxel count overflows size_t.
  void validate() const;

  std::size_t voxel_count() const noexcept {
    return dims[0] * dims[1] * dims[2];
  }

  std::size_t linear(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return x + dims[0] * (y + dims[1] * z);
  }
  std::size_t linear(const Index3& p) const noexcept {
    return linear(p.x, p.y, p.z);
  }

  Index3 coords(std::size_t index) const noexcept {
    const std::size_t sxy = dims[0] * dims[1];
    return {index % dims[0], (index / dims[0]) % dims[1], index / sxy};
  }

  bool contains(std::ptrdiff_t x, std::ptrdiff_t y, std::ptrdiff_t z) const noexcept {
    return x >= 0 && y >= 0 && z >= 0 &&
           static_cast<std::size_t>(x) < dims[0] &&
           static_cast<std::size_t>(y) < dims[1] &&
           static_cast<std::size_t>(z) < dims[2];
  }

  friend bool operator==(const VolumeGeometry&, const VolumeGeometry&) = default;
};

std::string to_string(const VolumeGeometry& g);

// Throws GeometryMismatch naming `what` when the two geometries differ.
void require_same_geometry(const VolumeGeometry& a, const VolumeGeometry& b,
                           const char* what);

template <class T, class Tag>
class Volume {
 public:
  using value_type = T;

  Volume() = default;
  explicit Volume(VolumeGeometry geometry, T fill = T{})
      : geometry_(validated(std::move(geometry))),
        data_(geometry_.voxel_count(), fill) {}
  Volume(VolumeGeometry geometry, std::vector<T> data)
      : geometry_(validated(std::move(geometry))), data_(std::move(data)) {
    if (data_.size() != geometry_.voxel_count()) {
      throw InvalidArgument("voxel buffer length " + std::to_string(data_.size()) +
                            " does not match " + to_string(geometry_));
    }
  }

  const VolumeGeometry& geometry() const noexcept { return geometry_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }
  const std::vector<T>& values() const noexcept { return data_; }

  const T& operator[](std::size_t i) const noexcept { return data_[i]; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }

  const T& at(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return data_[geometry_.linear(x, y, z)];
  }
  T& at(std::size_t x, std::size_t y, std::size_t z) noexcept {
    return data_[geometry_.linear(x, y, z)];
  }

  friend bool operator==(const Volume&, const Volume&) = default;

 private:
  static VolumeGeometry validated(VolumeGeometry g) {
    g.validate();
    return g;
  }

  VolumeGeometry geometry_;
  std::vector<T> data_;
};

// Tri-state mask proposal codes. The numeric values are the on-disk codes.
enum class Label : std::uint8_t {
  Background = 0,
  Foreground = 1,
  Unknown = 2,
};

using ScalarVolume = Volume<float, struct ScalarTag>;
using BinaryMask = Volume<std::uint8_t, struct MaskTag>;
using MaskProposal = Volume<Label, struct ProposalTag>;
using PredictionVolume = Volume<double, struct PredictionTag>;

enum class DistanceKind : std::uint8_t { Geodesic, Euclidean, InverseGeodesic };

const char* to_string(DistanceKind kind) noexcept;

class DistanceMap : public Volume<double, struct DistanceTag> {
 public:
  DistanceMap() = default;
  DistanceMap(VolumeGeometry geometry, DistanceKind kind, double fill = 0.0)
      : Volume(std::move(geometry), fill), kind_(kind) {}
  DistanceMap(VolumeGeometry geometry, DistanceKind kind, std::vector<double> data)
      : Volume(std::move(geometry), std::move(data)), kind_(kind) {}

  DistanceKind kind() const noexcept { return kind_; }
  double max() const noexcept;

  friend bool operator==(const DistanceMap&, const DistanceMap&) = default;

 private:
  DistanceKind kind_ = DistanceKind::Geodesic;
};

// Sorted set of distinct annotated voxel indices.
class SkeletonAnnotation {
 public:
  SkeletonAnnotation() = default;
  // Sorts and validates; throws InvalidArgument on duplicates or
  // out-of-bounds indices.
  SkeletonAnnotation(VolumeGeometry geometry, std::vector<std::size_t> voxels);

  static SkeletonAnnotation from_mask(const BinaryMask& mask);

  const VolumeGeometry& geometry() const noexcept { return geometry_; }
  std::span<const std::size_t> voxels() const noexcept { return voxels_; }
  std::size_t size() const noexcept { return voxels_.size(); }
  bool empty() const noexcept { return voxels_.empty(); }
  bool contains(std::size_t index) const noexcept;

  BinaryMask to_mask() const;

  friend bool operator==(const SkeletonAnnotation&, const SkeletonAnnotation&) = default;

 private:
  VolumeGeometry geometry_;
  std::vector<std::size_t> voxels_;
};

// Nonzero voxels become foreground.
BinaryMask to_mask(const ScalarVolume& v);
// Accepts only the codes 0, 1, 2; throws FormatError otherwise.
MaskProposal to_proposal(const ScalarVolume& v);
// Throws InvalidArgument when any value lies outside [0, 1].
PredictionVolume to_prediction(const ScalarVolume& v);

struct ProposalCounts {
  std::size_t foreground = 0;
  std::size_t background = 0;
  std::size_t unknown = 0;

  std::size_t labeled() const noexcept { return foreground + background; }
};

ProposalCounts count_labels(const MaskProposal& p);

}  // namespace skelprop

#endif  // SKELPROP_VOLUME_HPP
