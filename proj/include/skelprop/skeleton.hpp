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
 * Topology-preserving thinning and skeleton branch decomposition.
 *
 * Thinning deletes border voxels in six directional sub-passes per
 * iteration, in the fixed order -x, +x, -y, +y, -z, +z. A voxel is
 * deletable when it is a border voxel for the current direction, is not
 * an endpoint (exactly one 26-neighbor), leaves the Euler characteristic
 * of its 3x3x3 neighborhood unchanged and is a simple point (one
 * 26-connected foreground component in N26, one 6-connected background
 * component adjacent to it in N18). Candidates are collected for the
 * whole sub-pass, then re-checked and deleted one at a time in ascending
 * linear order. The volume border counts as background.
 *
 * Graph: 26-adjacency on skeleton voxels. Voxels of degree >= 3 are
 * grouped into 26-connected junction clusters, each acting as a single
 * node; degree-1 voxels are endpoints, degree-0 voxels are isolated.
 * Branches are chains of degree-2 voxels between nodes, listed with the
 * node voxel at each end.
 */

#ifndef SKELPROP_SKELETON_HPP
#define SKELPROP_SKELETON_HPP

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "skelprop/volume.hpp"

namespace skelprop {

SkeletonAnnotation skeletonize(const BinaryMask& mask);

namespace topology {

// 3x3x3 neighborhood, index (dz + 1) * 9 + (dy + 1) * 3 + (dx + 1).
using Neighborhood = std::array<std::uint8_t, 27>;

int foreground_components_26(const Neighborhood& n);
int background_components_6(const Neighborhood& n);
bool is_simple_point(const Neighborhood& n);
// Euler characteristic of the union of closed unit cubes in n.
int euler_characteristic(const Neighborhood& n);
bool is_euler_invariant(const Neighborhood& n);

}  // namespace topology

enum class NodeKind { Endpoint, Junction, Isolated };

struct SkeletonNode {
  NodeKind kind;
  std::vector<std::size_t> voxels;  // sorted linear indices
};

struct SkeletonBranch {
  // Ordered chain. First and last entries are node voxels (equal for a
  // single-voxel branch); everything in between has degree 2.
  std::vector<std::size_t> voxels;
  // Junction voxels that are not on any chain; shared by every branch
  // incident to their junction.
  std::vector<std::size_t> shared;
  int start_node = -1;  // -1 for closed loops without a node
  int end_node = -1;
  double length_mm = 0.0;  // sum of consecutive chain steps
  // True for a node with no incident chain (an isolated voxel or a bare
  // junction blob); `voxels` then lists the node's voxels in index order.
  bool node_only = false;
};

class SkeletonGraph {
 public:
  const VolumeGeometry& geometry() const noexcept { return geometry_; }
  const std::vector<std::size_t>& voxels() const noexcept { return voxels_; }
  const std::vector<SkeletonNode>& nodes() const noexcept { return nodes_; }
  const std::vector<SkeletonBranch>& branches() const noexcept { return branches_; }
  int degree(std::size_t voxel) const;
  double tree_length() const noexcept { return tree_length_; }

  std::size_t endpoint_count() const;
  std::size_t junction_count() const;
  std::size_t junction_voxel_count() const;
  std::size_t interior_voxel_count() const;

  // Every 26-adjacent voxel pair, first < second.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  // Plain-text dump: header comment, one "a b" edge per line (x y z
  // triples), then one line per branch.
  std::string edge_list() const;

 private:
  friend SkeletonGraph build_graph(const SkeletonAnnotation&, const VolumeGeometry&);

  VolumeGeometry geometry_;
  std::vector<std::size_t> voxels_;
  std::vector<int> degree_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<SkeletonNode> nodes_;
  std::vector<SkeletonBranch> branches_;
  double tree_length_ = 0.0;
};

SkeletonGraph build_graph(const SkeletonAnnotation& ska, const VolumeGeometry& geometry);
inline SkeletonGraph build_graph(const SkeletonAnnotation& ska) {
  return build_graph(ska, ska.geometry());
}

// Physical distance between two voxel centers.
double step_length(const VolumeGeometry& g, std::size_t a, std::size_t b);

}  // namespace skelprop

#endif  // SKELPROP_SKELETON_HPP
