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
 * Synthetic branching-tube phantoms with known ground truth.
 *
 * A binary tree of straight capsule segments is grown breadth first from
 * a root tube pointing along +z. Each node splits into two children on
 * opposite sides of the parent axis. Candidate children are rejected
 * while they leave the volume or come within two voxels of an unrelated
 * tube; after repeated failures the requested lengths shrink.
 *
 * The centerline of every segment is voxelized with a 3D Bresenham walk
 * between the rounded end points; those voxels form the skeleton and are
 * always part of the mask.
 *
 * Randomness: std::mt19937_64 (the standard's fully specified 64-bit
 * Mersenne Twister). Uniform reals use the top 53 bits of one draw,
 * normals use Box-Muller on two uniforms. No std:: distributions are
 * involved, so a seed gives the same phantom on every platform.
 */

#ifndef SKELPROP_PHANTOM_HPP
#define SKELPROP_PHANTOM_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skelprop/volume.hpp"

namespace skelprop {

struct PhantomSpec {
  VolumeGeometry geometry{{64, 64, 64}};
  int depth = 3;  // generations below the root
  double root_radius = 2.5;
  double radius_decay = 0.75;
  double length_min = 10.0;
  double length_max = 16.0;
  double angle_min_deg = 35.0;
  double angle_max_deg = 55.0;
  double foreground = 1.0;
  double background = 0.0;
  double blur_sigma = 1.0;
  double noise_sigma = 0.05;
  std::uint64_t seed = 1;

  void validate() const;
};

// key=value lines, one per field.
std::string describe(const PhantomSpec& spec);

using Point3 = std::array<double, 3>;

struct PhantomBranch {
  Point3 start{};
  Point3 end{};
  double radius = 0.0;
  int generation = 0;
  int parent = -1;
  std::vector<std::size_t> voxels;  // centerline, start to end
  double length_mm = 0.0;
};

struct Phantom {
  ScalarVolume image;
  BinaryMask mask;
  SkeletonAnnotation skeleton;
  std::vector<PhantomBranch> branches;
  double tree_length_mm = 0.0;
};

Phantom generate_phantom(const PhantomSpec& spec);

// Plain-text branch list: one line per branch with generation, parent,
// radius, physical length, end points and voxel count.
std::string branch_table(const Phantom& p);

class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();   // standard normal

 private:
  std::mt19937_64 engine_;
};

// Closest distance between segments [p0, p1] and [q0, q1].
double segment_distance(const Point3& p0, const Point3& p1, const Point3& q0, const Point3& q1);

// 26-connected voxel walk between two integer points, both included.
std::vector<std::array<std::ptrdiff_t, 3>> bresenham_3d(std::array<std::ptrdiff_t, 3> a,
                                                        std::array<std::ptrdiff_t, 3> b);

}  // namespace skelprop

#endif  // SKELPROP_PHANTOM_HPP
