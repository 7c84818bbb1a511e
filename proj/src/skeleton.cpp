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

#include "skelprop/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace skelprop {

namespace topology {
namespace {

constexpr int kCenter = 13;

constexpr int pos(int dx, int dy, int dz) { return (dz + 1) * 9 + (dy + 1) * 3 + (dx + 1); }

struct CubeTables {
  std::array<std::array<int, 3>, 27> offset{};
  std::array<std::vector<int>, 27> adj26;
  std::array<std::vector<int>, 27> adj6;
  std::array<bool, 27> in_n18{};
  std::array<bool, 27> face{};

  CubeTables() {
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int p = pos(dx, dy, dz);
          offset[p] = {dx, dy, dz};
          const int l1 = std::abs(dx) + std::abs(dy) + std::abs(dz);
          in_n18[p] = l1 == 1 || l1 == 2;
          face[p] = l1 == 1;
        }
    for (int a = 0; a < 27; ++a)
      for (int b = 0; b < 27; ++b) {
        if (a == b) continue;
        int cheb = 0;
        int l1 = 0;
        for (int k = 0; k < 3; ++k) {
          const int d = std::abs(offset[a][k] - offset[b][k]);
          cheb = std::max(cheb, d);
          l1 += d;
        }
        if (cheb == 1) adj26[a].push_back(b);
        if (l1 == 1) adj6[a].push_back(b);
      }
  }
};

const CubeTables& tables() {
  static const CubeTables t;
  return t;
}

// Counts components among positions where member[p] holds, using the
// given adjacency. When `anchor` is non-null only components containing
// an anchor position are counted.
int count_components(const std::array<bool, 27>& member,
                     const std::array<std::vector<int>, 27>& adj,
                     const std::array<bool, 27>* anchor) {
  std::array<bool, 27> seen{};
  std::array<int, 27> stack{};
  int count = 0;
  for (int s = 0; s < 27; ++s) {
    if (!member[s] || seen[s]) continue;
    int top = 0;
    stack[top++] = s;
    seen[s] = true;
    bool anchored = anchor == nullptr;
    while (top > 0) {
      const int p = stack[--top];
      if (anchor != nullptr && (*anchor)[p]) anchored = true;
      for (int q : adj[p]) {
        if (member[q] && !seen[q]) {
          seen[q] = true;
          stack[top++] = q;
        }
      }
    }
    if (anchored) ++count;
  }
  return count;
}

}  // namespace

int foreground_components_26(const Neighborhood& n) {
  std::array<bool, 27> member{};
  for (int p = 0; p < 27; ++p) member[p] = p != kCenter && n[p] != 0;
  return count_components(member, tables().adj26, nullptr);
}

int background_components_6(const Neighborhood& n) {
  const auto& t = tables();
  std::array<bool, 27> member{};
  for (int p = 0; p < 27; ++p) member[p] = t.in_n18[p] && n[p] == 0;
  return count_components(member, t.adj6, &t.face);
}

bool is_simple_point(const Neighborhood& n) {
  return foreground_components_26(n) == 1 && background_components_6(n) == 1;
}

int euler_characteristic(const Neighborhood& n) {
  // Cells of the cubical complex in doubled coordinates 0..6 per axis: an
  // even coordinate is a grid plane, an odd one the interior of a voxel
  // interval. Voxel i touches coordinates 2i, 2i + 1, 2i + 2.
  int chi = 0;
  for (int w = 0; w < 7; ++w)
    for (int v = 0; v < 7; ++v)
      for (int u = 0; u < 7; ++u) {
        auto range = [](int c) -> std::pair<int, int> {
          if (c % 2) return {(c - 1) / 2, (c - 1) / 2};
          return {std::max(0, c / 2 - 1), std::min(2, c / 2)};
        };
        const auto [x0, x1] = range(u);
        const auto [y0, y1] = range(v);
        const auto [z0, z1] = range(w);
        bool present = false;
        for (int z = z0; z <= z1 && !present; ++z)
          for (int y = y0; y <= y1 && !present; ++y)
            for (int x = x0; x <= x1 && !present; ++x) present = n[z * 9 + y * 3 + x] != 0;
        if (!present) continue;
        const int dim = (u % 2) + (v % 2) + (w % 2);
        chi += dim % 2 ? -1 : 1;
      }
  return chi;
}

bool is_euler_invariant(const Neighborhood& n) {
  Neighborhood with = n;
  Neighborhood without = n;
  with[kCenter] = 1;
  without[kCenter] = 0;
  return euler_characteristic(with) == euler_characteristic(without);
}

}  // namespace topology

namespace {

class PaddedGrid {
 public:
  explicit PaddedGrid(const BinaryMask& mask)
      : nx_(mask.geometry().dims[0] + 2),
        ny_(mask.geometry().dims[1] + 2),
        nz_(mask.geometry().dims[2] + 2),
        data_(nx_ * ny_ * nz_, 0) {
    const auto& d = mask.geometry().dims;
    for (std::size_t z = 0; z < d[2]; ++z)
      for (std::size_t y = 0; y < d[1]; ++y)
        for (std::size_t x = 0; x < d[0]; ++x) {
          data_[index(x + 1, y + 1, z + 1)] = mask.at(x, y, z) ? 1 : 0;
        }
  }

  std::size_t index(std::size_t x, std::size_t y, std::size_t z) const {
    return x + nx_ * (y + ny_ * z);
  }

  std::ptrdiff_t stride(int axis) const {
    return axis == 0 ? 1
                     : axis == 1 ? static_cast<std::ptrdiff_t>(nx_)
                                 : static_cast<std::ptrdiff_t>(nx_ * ny_);
  }

  topology::Neighborhood neighborhood(std::size_t p) const {
    topology::Neighborhood n{};
    int k = 0;
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          n[k++] = data_[p + dx * stride(0) + dy * stride(1) + dz * stride(2)];
        }
    return n;
  }

  std::uint8_t& operator[](std::size_t p) { return data_[p]; }
  std::uint8_t operator[](std::size_t p) const { return data_[p]; }

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t nz() const { return nz_; }

 private:
  std::size_t nx_, ny_, nz_;
  std::vector<std::uint8_t> data_;
};

bool is_endpoint(const topology::Neighborhood& n) {
  int count = 0;
  for (int p = 0; p < 27; ++p) count += (p != 13 && n[p]) ? 1 : 0;
  return count == 1;
}

bool deletable(const topology::Neighborhood& n) {
  return !is_endpoint(n) && topology::is_euler_invariant(n) && topology::is_simple_point(n);
}

}  // namespace

SkeletonAnnotation skeletonize(const BinaryMask& mask) {
  bool any = false;
  for (auto v : mask.data()) any = any || v != 0;
  if (!any) throw InvalidArgument("skeletonize: mask has no foreground voxels");

  PaddedGrid grid(mask);
  // -x, +x, -y, +y, -z, +z
  std::array<std::ptrdiff_t, 6> border_offset{};
  for (int a = 0; a < 3; ++a) {
    border_offset[2 * a] = -grid.stride(a);
    border_offset[2 * a + 1] = grid.stride(a);
  }

  std::vector<std::size_t> candidates;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int dir = 0; dir < 6; ++dir) {
      candidates.clear();
      for (std::size_t z = 1; z + 1 < grid.nz(); ++z)
        for (std::size_t y = 1; y + 1 < grid.ny(); ++y)
          for (std::size_t x = 1; x + 1 < grid.nx(); ++x) {
            const std::size_t p = grid.index(x, y, z);
            if (!grid[p] || grid[p + border_offset[dir]]) continue;
            if (deletable(grid.neighborhood(p))) candidates.push_back(p);
          }
      for (std::size_t p : candidates) {
        if (deletable(grid.neighborhood(p))) {
          grid[p] = 0;
          changed = true;
        }
      }
    }
  }

  const VolumeGeometry& g = mask.geometry();
  std::vector<std::size_t> kept;
  for (std::size_t z = 0; z < g.dims[2]; ++z)
    for (std::size_t y = 0; y < g.dims[1]; ++y)
      for (std::size_t x = 0; x < g.dims[0]; ++x) {
        if (grid[grid.index(x + 1, y + 1, z + 1)]) kept.push_back(g.linear(x, y, z));
      }
  return SkeletonAnnotation(g, std::move(kept));
}

double step_length(const VolumeGeometry& g, std::size_t a, std::size_t b) {
  const Index3 p = g.coords(a);
  const Index3 q = g.coords(b);
  const double dx = (static_cast<double>(p.x) - static_cast<double>(q.x)) * g.spacing[0];
  const double dy = (static_cast<double>(p.y) - static_cast<double>(q.y)) * g.spacing[1];
  const double dz = (static_cast<double>(p.z) - static_cast<double>(q.z)) * g.spacing[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

int SkeletonGraph::degree(std::size_t voxel) const {
  const auto it = std::lower_bound(voxels_.begin(), voxels_.end(), voxel);
  if (it == voxels_.end() || *it != voxel) return -1;
  return degree_[it - voxels_.begin()];
}

std::size_t SkeletonGraph::endpoint_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const auto& n) { return n.kind == NodeKind::Endpoint; }));
}

std::size_t SkeletonGraph::junction_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const auto& n) { return n.kind == NodeKind::Junction; }));
}

std::size_t SkeletonGraph::junction_voxel_count() const {
  std::size_t c = 0;
  for (const auto& n : nodes_) {
    if (n.kind == NodeKind::Junction) c += n.voxels.size();
  }
  return c;
}

std::size_t SkeletonGraph::interior_voxel_count() const {
  std::size_t c = 0;
  for (const auto& b : branches_) {
    if (b.node_only) continue;
    if (b.start_node < 0) {
      c += b.voxels.size() - 1;  // closed loop repeats its first voxel
    } else if (b.voxels.size() > 2) {
      c += b.voxels.size() - 2;
    }
  }
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> SkeletonGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < voxels_.size(); ++i) {
    for (std::uint32_t j : adjacency_[i]) {
      if (j > i) out.emplace_back(voxels_[i], voxels_[j]);
    }
  }
  return out;
}

std::string SkeletonGraph::edge_list() const {
  std::ostringstream os;
  auto xyz = [&](std::size_t v) {
    const Index3 p = geometry_.coords(v);
    std::ostringstream s;
    s << p.x << ' ' << p.y << ' ' << p.z;
    return s.str();
  };
  os << "# skeleton graph " << to_string(geometry_) << ": " << voxels_.size() << " voxels, "
     << branches_.size() << " branches, tree length " << tree_length_ << " mm\n";
  for (const auto& [a, b] : edges()) os << "edge " << xyz(a) << "  " << xyz(b) << '\n';
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const auto& br = branches_[i];
    os << "branch " << i << " voxels " << br.voxels.size() << " length " << br.length_mm
       << " nodes " << br.start_node << ' ' << br.end_node << '\n';
  }
  return os.str();
}

SkeletonGraph build_graph(const SkeletonAnnotation& ska, const VolumeGeometry& geometry) {
  require_same_geometry(ska.geometry(), geometry, "skeleton graph");
  if (ska.empty()) throw InvalidArgument("build_graph: skeleton is empty");

  SkeletonGraph out;
  out.geometry_ = geometry;
  out.voxels_.assign(ska.voxels().begin(), ska.voxels().end());
  const auto& vox = out.voxels_;
  const std::size_t n = vox.size();

  auto id_of = [&](std::size_t linear) -> std::ptrdiff_t {
    const auto it = std::lower_bound(vox.begin(), vox.end(), linear);
    return (it != vox.end() && *it == linear) ? it - vox.begin() : -1;
  };

  out.adjacency_.assign(n, {});
  out.degree_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Index3 c = geometry.coords(vox[i]);
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const auto x = static_cast<std::ptrdiff_t>(c.x) + dx;
          const auto y = static_cast<std::ptrdiff_t>(c.y) + dy;
          const auto z = static_cast<std::ptrdiff_t>(c.z) + dz;
          if (!geometry.contains(x, y, z)) continue;
          const auto j = id_of(geometry.linear(x, y, z));
          if (j >= 0) out.adjacency_[i].push_back(static_cast<std::uint32_t>(j));
        }
    std::sort(out.adjacency_[i].begin(), out.adjacency_[i].end());
    out.degree_[i] = static_cast<int>(out.adjacency_[i].size());
  }
  const auto& adj = out.adjacency_;

  // Node assignment: junction clusters (26-connected degree >= 3 voxels),
  // endpoints, isolated voxels. -1 marks chain (degree-2) voxels. Node
  // voxel lists hold ids until the end.
  std::vector<int> node_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (node_of[i] >= 0) continue;
    const int d = out.degree_[i];
    if (d == 2) continue;
    const int id = static_cast<int>(out.nodes_.size());
    if (d < 2) {
      out.nodes_.push_back({d == 0 ? NodeKind::Isolated : NodeKind::Endpoint, {i}});
      node_of[i] = id;
      continue;
    }
    SkeletonNode node{NodeKind::Junction, {}};
    std::vector<std::size_t> stack = {i};
    node_of[i] = id;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      node.voxels.push_back(p);
      for (std::uint32_t q : adj[p]) {
        if (node_of[q] < 0 && out.degree_[q] >= 3) {
          node_of[q] = id;
          stack.push_back(q);
        }
      }
    }
    out.nodes_.push_back(std::move(node));
  }
  // A degree-2 voxel whose two neighbors belong to the same junction is a
  // notch in that junction rather than a branch.
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (node_of[i] >= 0 || out.degree_[i] != 2) continue;
      const int a = node_of[adj[i][0]];
      const int b = node_of[adj[i][1]];
      if (a >= 0 && a == b && out.nodes_[a].kind == NodeKind::Junction) {
        node_of[i] = a;
        out.nodes_[a].voxels.push_back(i);
        grew = true;
      }
    }
  }

  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  auto edge_key = [](std::size_t a, std::size_t b) {
    return std::pair{static_cast<std::uint32_t>(std::min(a, b)),
                     static_cast<std::uint32_t>(std::max(a, b))};
  };
  std::vector<std::uint8_t> on_chain(n, 0);
  std::vector<std::vector<std::size_t>> chains;  // as ids
  std::vector<std::pair<int, int>> chain_nodes;

  for (int node = 0; node < static_cast<int>(out.nodes_.size()); ++node) {
    auto members = out.nodes_[node].voxels;
    std::sort(members.begin(), members.end());
    for (std::size_t v : members) {
      for (std::uint32_t u : adj[v]) {
        if (node_of[u] == node) continue;
        if (used.count(edge_key(v, u))) continue;
        std::vector<std::size_t> chain = {v};
        std::size_t prev = v;
        std::size_t cur = u;
        used.insert(edge_key(prev, cur));
        while (node_of[cur] < 0) {
          chain.push_back(cur);
          const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
          used.insert(edge_key(cur, next));
          prev = cur;
          cur = next;
        }
        chain.push_back(cur);
        chains.push_back(std::move(chain));
        chain_nodes.emplace_back(node, node_of[cur]);
      }
    }
  }
  // Closed loops made only of degree-2 voxels.
  for (const auto& c : chains)
    for (std::size_t id : c) on_chain[id] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (on_chain[i] || node_of[i] >= 0) continue;
    std::vector<std::size_t> chain = {i};
    on_chain[i] = 1;
    std::size_t prev = i;
    std::size_t cur = adj[i][0];
    while (cur != i) {
      chain.push_back(cur);
      on_chain[cur] = 1;
      const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    }
    chain.push_back(i);
    chains.push_back(std::move(chain));
    chain_nodes.emplace_back(-1, -1);
  }
  // Nodes with no incident chain (isolated voxels, junction blobs).
  std::vector<int> incident(out.nodes_.size(), 0);
  for (const auto& [a, b] : chain_nodes) {
    if (a >= 0) ++incident[a];
    if (b >= 0) ++incident[b];
  }
  const std::size_t first_node_only = chains.size();
  for (int node = 0; node < static_cast<int>(out.nodes_.size()); ++node) {
    if (incident[node] > 0) continue;
    auto members = out.nodes_[node].voxels;
    std::sort(members.begin(), members.end());
    chains.push_back(members);
    chain_nodes.emplace_back(node, node);
  }

  for (const auto& c : chains)
    for (std::size_t id : c) on_chain[id] = 1;

  for (std::size_t k = 0; k < chains.size(); ++k) {
    SkeletonBranch b;
    b.start_node = chain_nodes[k].first;
    b.end_node = chain_nodes[k].second;
    b.node_only = k >= first_node_only;
    for (std::size_t id : chains[k]) b.voxels.push_back(vox[id]);
    for (std::size_t s = 1; s < b.voxels.size(); ++s) {
      b.length_mm += step_length(geometry, b.voxels[s - 1], b.voxels[s]);
    }
    for (int node : {b.start_node, b.end_node}) {
      if (node < 0 || out.nodes_[node].kind != NodeKind::Junction) continue;
      for (std::size_t id : out.nodes_[node].voxels) {
        if (!on_chain[id]) b.shared.push_back(vox[id]);
      }
    }
    std::sort(b.shared.begin(), b.shared.end());
    b.shared.erase(std::unique(b.shared.begin(), b.shared.end()), b.shared.end());
    out.tree_length_ += b.length_mm;
    out.branches_.push_back(std::move(b));
  }

  for (auto& node : out.nodes_) {
    for (auto& id : node.voxels) id = vox[id];
    std::sort(node.voxels.begin(), node.voxels.end());
  }
  return out;
}

}  // namespace skelprop
