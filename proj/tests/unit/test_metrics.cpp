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

#include "doctest.h"
#include "oracles.hpp"
#include "skelprop/metrics.hpp"
#include "skelprop/skeleton.hpp"

using namespace skelprop;

namespace {

BinaryMask line_mask(const VolumeGeometry& g, std::size_t y, std::size_t z, std::size_t x0,
                     std::size_t n) {
  BinaryMask m(g);
  for (std::size_t x = x0; x < x0 + n; ++x) m.at(x, y, z) = 1;
  return m;
}

BinaryMask merge(const BinaryMask& a, const BinaryMask& b) {
  BinaryMask m = a;
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = a[i] | b[i];
  return m;
}

BinaryMask translate(const BinaryMask& m, const VolumeGeometry& to, std::size_t dx,
                     std::size_t dy, std::size_t dz) {
  BinaryMask out(to);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    const Index3 c = m.geometry().coords(i);
    out.at(c.x + dx, c.y + dy, c.z + dz) = 1;
  }
  return out;
}

}  // namespace

TEST_CASE("component labeling agrees with flood fill") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const VolumeGeometry g({7, 6, 5});
    const BinaryMask m = oracle::random_mask(g, rng, 0.1 + 0.02 * (trial % 10));
    std::size_t count = 0;
    const auto labels = label_components(m, &count);
    const auto comps = oracle::flood_fill_components(m);
    REQUIRE(count == comps.size());
    for (std::size_t k = 0; k < comps.size(); ++k) {
      for (std::size_t v : comps[k]) CHECK(labels[v] == k + 1);
    }
    for (std::size_t i = 0; i < m.size(); ++i)
      if (!m[i]) CHECK(labels[i] == 0);

    const BinaryMask big = largest_component(m);
    std::size_t best = 0;
    for (std::size_t k = 1; k < comps.size(); ++k)
      if (comps[k].size() > comps[best].size()) best = k;
    BinaryMask expect(g);
    if (!comps.empty())
      for (std::size_t v : comps[best]) expect[v] = 1;
    CHECK(big == expect);
    CHECK(largest_component(big) == big);
  }
}

TEST_CASE("largest component examples") {
  const VolumeGeometry g({20, 5, 5});
  const BinaryMask m = merge(line_mask(g, 1, 1, 0, 3), line_mask(g, 3, 3, 5, 10));
  CHECK(largest_component(m) == line_mask(g, 3, 3, 5, 10));
  const BinaryMask empty(g);
  CHECK(largest_component(empty) == empty);
  // Equal sizes: the component holding the smaller linear index wins.
  const BinaryMask tie = merge(line_mask(g, 3, 3, 0, 4), line_mask(g, 0, 1, 10, 4));
  CHECK(largest_component(tie) == line_mask(g, 0, 1, 10, 4));
}

TEST_CASE("volumetric metrics examples") {
  const VolumeGeometry g({10, 1, 1});
  const BinaryMask ref = line_mask(g, 0, 0, 0, 4);
  const auto same = volumetric_metrics(ref, ref);
  CHECK(same.dsc == 1.0);
  CHECK(same.tpr == 1.0);
  CHECK(same.fpr == 0.0);
  const auto disjoint = volumetric_metrics(line_mask(g, 0, 0, 6, 3), ref);
  CHECK(disjoint.dsc == 0.0);
  CHECK(disjoint.tpr == 0.0);
  CHECK(disjoint.fpr == doctest::Approx(0.5));

  const BinaryMask pred = line_mask(g, 0, 0, 2, 6);  // 2..7
  const auto a = volumetric_metrics(pred, ref);
  const auto b = volumetric_metrics(ref, pred);
  CHECK(a.dsc == b.dsc);
  CHECK(a.tpr == doctest::Approx(0.5));
  CHECK(b.tpr == doctest::Approx(2.0 / 6.0));
  CHECK(a.fpr == doctest::Approx(4.0 / 6.0));
  CHECK(b.fpr == doctest::Approx(2.0 / 4.0));

  const BinaryMask none(g);
  const auto empty = volumetric_metrics(none, none);
  CHECK(empty.dsc == 1.0);
  CHECK(empty.tpr == 1.0);
  CHECK(empty.fpr == 0.0);
}

TEST_CASE("volumetric metrics match a count oracle") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 50; ++trial) {
    const VolumeGeometry g({5, 5, 5});
    const BinaryMask p = oracle::random_mask(g, rng, 0.4);
    const BinaryMask r = oracle::random_mask(g, rng, 0.4);
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      tp += p[i] && r[i];
      fp += p[i] && !r[i];
      fn += !p[i] && r[i];
      tn += !p[i] && !r[i];
    }
    const auto m = volumetric_metrics(p, r);
    CHECK(m.counts.tp == tp);
    CHECK(m.counts.fp == fp);
    CHECK(m.counts.tn == tn);
    CHECK(m.counts.fn == fn);
    CHECK(m.dsc == 2.0 * tp / (2.0 * tp + fp + fn));
    CHECK(m.tpr == double(tp) / double(tp + fn));
    CHECK(m.fpr == double(fp) / double(fp + tn));
    CHECK(volumetric_metrics(r, p).dsc == m.dsc);
  }
}

TEST_CASE("branch detection examples") {
  const VolumeGeometry g({12, 6, 3});
  const BinaryMask a = line_mask(g, 1, 1, 1, 10);
  const BinaryMask b = line_mask(g, 4, 1, 1, 10);
  const SkeletonGraph two = build_graph(SkeletonAnnotation::from_mask(merge(a, b)));
  REQUIRE(two.branches().size() == 2);

  const auto full = topology_metrics(merge(a, b), two);
  CHECK(full.bd == 1.0);
  CHECK(full.bd_star == 1.0);
  CHECK(full.td == 1.0);

  const auto half = topology_metrics(a, two);
  CHECK(half.bd == 0.5);
  CHECK(half.bd_star == 0.5);
  CHECK(half.td == doctest::Approx(0.5));

  const SkeletonGraph one = build_graph(SkeletonAnnotation::from_mask(a));
  const auto eight = topology_metrics(line_mask(g, 1, 1, 1, 8), one);
  CHECK(eight.detected == 1);
  CHECK(eight.bd == 1.0);
  CHECK(eight.bd_star == 1.0);
  CHECK(eight.td == doctest::Approx(7.0 / 9.0));
  const auto seven = topology_metrics(line_mask(g, 1, 1, 1, 7), one);
  CHECK(seven.bd == 0.0);
  CHECK(seven.bd_star == 1.0);
  const auto voxels = topology_metrics(line_mask(g, 1, 1, 1, 8), one, LengthMode::Voxels);
  CHECK(voxels.reference_length == 9.0);
  CHECK(voxels.detected_length == 7.0);
}

TEST_CASE("anisotropic tree length") {
  const VolumeGeometry g({12, 3, 3}, {0.5, 1.0, 1.0});
  const BinaryMask a = line_mask(g, 1, 1, 1, 10);
  const auto t = topology_metrics(a, build_graph(SkeletonAnnotation::from_mask(a)));
  CHECK(t.reference_length == doctest::Approx(4.5));
  CHECK(t.td == 1.0);
}

TEST_CASE("topology metric bounds on random inputs") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const VolumeGeometry g({10, 10, 10});
    BinaryMask ref = oracle::random_mask(g, rng, 0.35);
    ref = largest_component(ref);
    if (std::count(ref.values().begin(), ref.values().end(), 1) == 0) continue;
    const SkeletonGraph graph = build_graph(skeletonize(ref));
    const BinaryMask pred = oracle::random_mask(g, rng, 0.5);
    const auto t = topology_metrics(pred, graph);
    CHECK(t.bd <= t.bd_star);
    CHECK(t.td >= 0.0);
    CHECK(t.td <= 1.0);
    CHECK(t.detected <= t.detected_any);
  }
}

TEST_CASE("metrics are translation invariant") {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 10; ++trial) {
    // Content drawn in an 8^3 corner of a 12^3 grid, then shifted inside
    // the same grid, so the negative count is unchanged too.
    const VolumeGeometry small({8, 8, 8});
    const VolumeGeometry g({12, 12, 12});
    const BinaryMask ref = translate(largest_component(oracle::random_mask(small, rng, 0.4)), g, 0, 0, 0);
    const BinaryMask pred = translate(oracle::random_mask(small, rng, 0.4), g, 0, 0, 0);
    const SkeletonGraph graph = build_graph(skeletonize(ref));
    const auto r0 = evaluate_segmentation(pred, ref, graph);

    std::vector<std::size_t> sk;
    for (std::size_t v : graph.voxels()) {
      const Index3 c = g.coords(v);
      sk.push_back(g.linear(c.x + 3, c.y + 2, c.z + 1));
    }
    const auto r1 = evaluate_segmentation(translate(pred, g, 3, 2, 1), translate(ref, g, 3, 2, 1),
                                          build_graph(SkeletonAnnotation(g, sk)));
    CHECK(r1.volumetric.dsc == r0.volumetric.dsc);
    CHECK(r1.volumetric.tpr == r0.volumetric.tpr);
    CHECK(r1.volumetric.fpr == r0.volumetric.fpr);
    CHECK(r1.topology.bd == r0.topology.bd);
    CHECK(r1.topology.bd_star == r0.topology.bd_star);
    CHECK(r1.topology.td == doctest::Approx(r0.topology.td).epsilon(1e-12));
  }
}

TEST_CASE("evaluation keeps only the largest component") {
  const VolumeGeometry g({20, 5, 5});
  const BinaryMask ref = line_mask(g, 2, 2, 2, 10);
  const SkeletonGraph graph = build_graph(SkeletonAnnotation::from_mask(ref));
  const BinaryMask pred = merge(ref, line_mask(g, 0, 0, 15, 3));
  const auto r = evaluate_segmentation(pred, ref, graph);
  CHECK(r.volumetric.dsc == 1.0);
  CHECK(r.volumetric.counts.fp == 0);
}
