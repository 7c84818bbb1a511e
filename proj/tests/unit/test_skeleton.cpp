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

#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "skelprop/metrics.hpp"
#include "skelprop/phantom.hpp"
#include "skelprop/skeleton.hpp"

using namespace skelprop;
using topology::Neighborhood;

namespace {

constexpr int kCenter = 13;

int nb_index(int dx, int dy, int dz) { return (dz + 1) * 9 + (dy + 1) * 3 + (dx + 1); }

std::size_t components(const BinaryMask& m) {
  return oracle::flood_fill_components(m).size();
}

BinaryMask y_shape(const VolumeGeometry& g, std::size_t arm) {
  BinaryMask m(g);
  const std::ptrdiff_t c = 8;
  m.at(c, c, c) = 1;
  for (std::size_t k = 1; k <= arm; ++k) {
    const auto s = static_cast<std::ptrdiff_t>(k);
    m.at(c + s, c, c) = 1;
    m.at(c - s, c + s, c) = 1;
    m.at(c - s, c - s, c) = 1;
  }
  return m;
}

BinaryMask random_blobs(const VolumeGeometry& g, std::mt19937_64& rng) {
  // Sum of a few random balls: topologically simple-ish but irregular.
  BinaryMask m(g);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int balls = 2 + static_cast<int>(rng() % 4);
  for (int b = 0; b < balls; ++b) {
    const double cx = u(rng) * g.dims[0], cy = u(rng) * g.dims[1], cz = u(rng) * g.dims[2];
    const double r = 1.5 + 2.5 * u(rng);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Index3 p = g.coords(i);
      const double dx = p.x - cx, dy = p.y - cy, dz = p.z - cz;
      if (dx * dx + dy * dy + dz * dz <= r * r) m[i] = 1;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("simple point classification") {
  Neighborhood n{};
  n[kCenter] = 1;
  CHECK_FALSE(topology::is_simple_point(n));  // isolated: deleting removes a component

  n[nb_index(1, 0, 0)] = 1;
  CHECK(topology::is_simple_point(n));  // tip of a segment

  n[nb_index(-1, 0, 0)] = 1;
  CHECK_FALSE(topology::is_simple_point(n));  // middle of a line: deletion splits it
  CHECK(topology::foreground_components_26(n) == 2);

  Neighborhood full;
  full.fill(1);
  CHECK_FALSE(topology::is_simple_point(full));  // deletion would open a cavity
  CHECK(topology::background_components_6(full) == 0);

  Neighborhood slab{};
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      for (int dz = -1; dz <= 0; ++dz) slab[nb_index(dx, dy, dz)] = 1;
  CHECK(topology::is_simple_point(slab));  // face of a solid
}

TEST_CASE("euler characteristic") {
  Neighborhood n{};
  CHECK(topology::euler_characteristic(n) == 0);
  n[kCenter] = 1;
  CHECK(topology::euler_characteristic(n) == 1);
  n[nb_index(1, 1, 1)] = 1;
  CHECK(topology::euler_characteristic(n) == 1);  // corner-connected cubes
  Neighborhood full;
  full.fill(1);
  CHECK(topology::euler_characteristic(full) == 1);

  Neighborhood ring{};
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if (dx != 0 || dy != 0) ring[nb_index(dx, dy, 0)] = 1;
  CHECK(topology::euler_characteristic(ring) == 0);  // one tunnel
  Neighborhood hollow = full;
  hollow[kCenter] = 0;
  CHECK(topology::euler_characteristic(hollow) == 2);  // one cavity
  CHECK_FALSE(topology::is_euler_invariant(full));
}

TEST_CASE("a one-voxel line is already thin") {
  const VolumeGeometry g({5, 14, 5});
  BinaryMask m(g);
  for (std::size_t y = 2; y < 12; ++y) m.at(2, y, 2) = 1;
  const SkeletonAnnotation s = skeletonize(m);
  CHECK(s == SkeletonAnnotation::from_mask(m));

  const SkeletonGraph graph = build_graph(s);
  REQUIRE(graph.branches().size() == 1);
  CHECK(graph.branches()[0].voxels.size() == 10);
  CHECK(graph.endpoint_count() == 2);
  CHECK(graph.junction_count() == 0);
  CHECK(graph.tree_length() == doctest::Approx(9.0));
  CHECK(graph.branches()[0].voxels.front() == g.linear(2, 2, 2));
  CHECK(graph.branches()[0].voxels.back() == g.linear(2, 11, 2));
}

TEST_CASE("diagonal line keeps physical step lengths") {
  const VolumeGeometry g({6, 6, 6}, {1.0, 2.0, 3.0});
  BinaryMask m(g);
  for (std::size_t k = 0; k < 5; ++k) m.at(k, k, k) = 1;
  const SkeletonGraph graph = build_graph(SkeletonAnnotation::from_mask(m));
  CHECK(graph.tree_length() == doctest::Approx(4 * std::sqrt(14.0)));
  CHECK(step_length(g, g.linear(0, 0, 0), g.linear(0, 1, 0)) == 2.0);
}

TEST_CASE("symmetric Y") {
  const VolumeGeometry g({17, 17, 17});
  const BinaryMask m = y_shape(g, 5);
  const SkeletonGraph graph = build_graph(SkeletonAnnotation::from_mask(m));
  CHECK(graph.branches().size() == 3);
  CHECK(graph.junction_count() == 1);
  CHECK(graph.endpoint_count() == 3);
  for (const auto& b : graph.branches()) {
    CHECK(b.voxels.size() == 6);
    const std::size_t centre = g.linear(8, 8, 8);
    CHECK((b.voxels.front() == centre || b.voxels.back() == centre));
    CHECK(b.shared.empty());
  }
  CHECK(skeletonize(m) == SkeletonAnnotation::from_mask(m));
}

TEST_CASE("junction cluster acts as one node") {
  // A plus sign in a plane: the centre and its four neighbours all have
  // degree >= 3, so they merge into one junction.
  const VolumeGeometry g({11, 11, 3});
  BinaryMask m(g);
  for (std::size_t k = 1; k < 10; ++k) {
    m.at(k, 5, 1) = 1;
    m.at(5, k, 1) = 1;
  }
  const SkeletonGraph graph = build_graph(SkeletonAnnotation::from_mask(m));
  CHECK(graph.junction_count() == 1);
  CHECK(graph.branches().size() == 4);
  CHECK(graph.endpoint_count() == 4);
  std::size_t node_voxels = 0;
  for (const auto& n : graph.nodes()) node_voxels += n.voxels.size();
  CHECK(graph.interior_voxel_count() + node_voxels == graph.voxels().size());
  // The centre lies on no chain and is shared by all four branches.
  for (const auto& b : graph.branches()) {
    CHECK(std::find(b.shared.begin(), b.shared.end(), g.linear(5, 5, 1)) != b.shared.end());
  }
}

TEST_CASE("closed loop and isolated voxel") {
  const VolumeGeometry g({8, 8, 3});
  BinaryMask m(g);
  // Octagonal ring: cut corners keep every voxel at degree 2.
  for (std::size_t k = 2; k <= 4; ++k) {
    m.at(k, 1, 1) = 1;
    m.at(k, 5, 1) = 1;
    m.at(1, k, 1) = 1;
    m.at(5, k, 1) = 1;
  }
  BinaryMask with_dot = m;
  with_dot.at(7, 0, 2) = 1;
  const SkeletonGraph graph = build_graph(SkeletonAnnotation::from_mask(with_dot));
  CHECK(graph.branches().size() == 2);
  std::size_t loops = 0, singles = 0;
  for (const auto& b : graph.branches()) {
    if (b.start_node < 0) {
      ++loops;
      CHECK(b.voxels.front() == b.voxels.back());
      CHECK(b.length_mm == doctest::Approx(8.0 + 4.0 * std::sqrt(2.0)));
    }
    if (b.node_only) ++singles;
  }
  CHECK(loops == 1);
  CHECK(singles == 1);
  // Thinning keeps the loop: it is a tunnel.
  CHECK(skeletonize(m) == SkeletonAnnotation::from_mask(m));
}

TEST_CASE("solid box thins to its long axis") {
  const VolumeGeometry g({9, 9, 25});
  BinaryMask box(g);
  for (std::size_t z = 2; z < 23; ++z)
    for (std::size_t y = 2; y < 7; ++y)
      for (std::size_t x = 2; x < 7; ++x) box.at(x, y, z) = 1;
  const SkeletonAnnotation s = skeletonize(box);
  CHECK(s.size() < 525 / 4);
  std::size_t zmin = 99, zmax = 0;
  for (std::size_t v : s.voxels()) {
    const Index3 c = g.coords(v);
    CHECK(box[v] == 1);
    zmin = std::min(zmin, c.z);
    zmax = std::max(zmax, c.z);
  }
  // Reaches to within one voxel of both end faces.
  CHECK(zmin <= 3);
  CHECK(zmax >= 21);
  const SkeletonGraph graph = build_graph(s);
  CHECK(graph.branches().size() == 1);
  CHECK(graph.endpoint_count() == 2);
}

TEST_CASE("thinning idempotence and component preservation") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const VolumeGeometry g({12, 12, 12});
    const BinaryMask m = trial % 2 ? random_blobs(g, rng) : oracle::random_mask(g, rng, 0.3);
    if (std::count(m.values().begin(), m.values().end(), 1) == 0) continue;
    const SkeletonAnnotation s = skeletonize(m);
    for (std::size_t v : s.voxels()) CHECK(m[v] == 1);
    CHECK(skeletonize(s.to_mask()) == s);
    CHECK(components(s.to_mask()) == components(m));
  }
}

TEST_CASE("thinning preconditions") {
  CHECK_THROWS_AS(skeletonize(BinaryMask(VolumeGeometry({3, 3, 3}))), InvalidArgument);
  CHECK_THROWS_AS(build_graph(SkeletonAnnotation(VolumeGeometry({3, 3, 3}), {})), InvalidArgument);
}

TEST_CASE("graph invariants on random skeletons") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const VolumeGeometry g({10, 10, 10});
    const SkeletonAnnotation s = skeletonize(random_blobs(g, rng));
    const SkeletonGraph graph = build_graph(s);

    std::size_t node_voxels = 0;
    for (const auto& n : graph.nodes()) node_voxels += n.voxels.size();
    CHECK(graph.interior_voxel_count() + node_voxels == s.size());

    std::set<std::pair<std::size_t, std::size_t>> brute;
    for (std::size_t a : s.voxels())
      for (std::size_t b : s.voxels()) {
        if (a >= b) continue;
        const Index3 p = g.coords(a), q = g.coords(b);
        const auto d = [](std::size_t u, std::size_t v) { return u > v ? u - v : v - u; };
        if (d(p.x, q.x) <= 1 && d(p.y, q.y) <= 1 && d(p.z, q.z) <= 1) brute.insert({a, b});
      }
    const auto e = graph.edges();
    CHECK(std::set<std::pair<std::size_t, std::size_t>>(e.begin(), e.end()) == brute);

    // Every skeleton voxel lies on some branch (chain or shared).
    std::set<std::size_t> covered;
    for (const auto& b : graph.branches()) {
      covered.insert(b.voxels.begin(), b.voxels.end());
      covered.insert(b.shared.begin(), b.shared.end());
    }
    CHECK(covered.size() == s.size());

    // Translation leaves the tree length unchanged.
    const VolumeGeometry big({13, 12, 11});
    std::vector<std::size_t> moved;
    for (std::size_t v : s.voxels()) {
      const Index3 c = g.coords(v);
      moved.push_back(big.linear(c.x + 3, c.y + 2, c.z + 1));
    }
    const SkeletonGraph shifted = build_graph(SkeletonAnnotation(big, moved));
    CHECK(shifted.tree_length() == doctest::Approx(graph.tree_length()).epsilon(1e-12));
    CHECK(shifted.branches().size() == graph.branches().size());
  }
}

TEST_CASE("phantom skeletons decompose into the generator's branches") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    PhantomSpec spec;
    spec.seed = seed;
    spec.depth = 1 + static_cast<int>(seed % 3);
    const Phantom ph = generate_phantom(spec);
    const SkeletonGraph graph = build_graph(ph.skeleton);
    CHECK(graph.branches().size() == ph.branches.size());
  }
}

TEST_CASE("edge list dump") {
  const VolumeGeometry g({17, 17, 17});
  const SkeletonGraph graph = build_graph(SkeletonAnnotation::from_mask(y_shape(g, 2)));
  const std::string text = graph.edge_list();
  CHECK(text.rfind("#", 0) == 0);
  CHECK(text.find("edge 8 8 8  9 8 8") != std::string::npos);
}
