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

#include "skelprop/propagation.hpp"

#include <cmath>
#include <string>

#include "skelprop/diagnostics.hpp"

namespace skelprop {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

void PropagationParams::validate() const {
  check_unit_interval(delta1, "delta1");
  check_unit_interval(delta2, "delta2");
  check_unit_interval(gamma, "gamma");
  if (!(delta1 < delta2)) {
    throw InvalidArgument("delta1 must be smaller than delta2 (got " + std::to_string(delta1) +
                          " >= " + std::to_string(delta2) + ")");
  }
  gaussian.validate();
  geodesic.validate();
}

MaskProposal g2bi(const DistanceMap& d_ggd, const SkeletonAnnotation& seeds, double delta1,
                  double delta2) {
  require_same_geometry(d_ggd.geometry(), seeds.geometry(), "g2bi seeds");
  check_unit_interval(delta1, "delta1");
  check_unit_interval(delta2, "delta2");
  if (!(delta1 < delta2)) throw InvalidArgument("g2bi requires delta1 < delta2");

  const double m = d_ggd.max();
  MaskProposal out(d_ggd.geometry(), Label::Unknown);
  if (m == 0.0) {
    warn("degenerate propagation: max geodesic distance is 0, every voxel stays unknown");
    return out;
  }
  const double fg = delta1 * m;
  const double bg = delta2 * m;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d = d_ggd[i];
    if (d < fg) {
      out[i] = Label::Foreground;
    } else if (d > bg) {
      out[i] = Label::Background;
    }
  }
  // Annotated voxels are airway by definition; with delta1 > 0 this is
  // already implied by D = 0 < delta1 * max.
  for (std::size_t s : seeds.voxels()) out[s] = Label::Foreground;
  return out;
}

MaskProposal ebi(const DistanceMap& d_eud, const SkeletonAnnotation& seeds, double gamma) {
  require_same_geometry(d_eud.geometry(), seeds.geometry(), "ebi seeds");
  check_unit_interval(gamma, "gamma");
  const double threshold = gamma * d_eud.max();
  MaskProposal out(d_eud.geometry(), Label::Unknown);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (d_eud[i] > threshold) out[i] = Label::Background;
  }
  for (std::size_t s : seeds.voxels()) out[s] = Label::Unknown;
  return out;
}

FusionResult dbi_fuse(const MaskProposal& mp_g, const MaskProposal& mp_e) {
  require_same_geometry(mp_g.geometry(), mp_e.geometry(), "dbi fusion");
  FusionResult r{MaskProposal(mp_g.geometry(), Label::Unknown), 0};
  for (std::size_t i = 0; i < mp_g.size(); ++i) {
    const bool fg = mp_g[i] == Label::Foreground;
    const bool bg = mp_g[i] == Label::Background || mp_e[i] == Label::Background;
    if (fg && bg) {
      ++r.conflicts;
    } else if (fg) {
      r.proposal[i] = Label::Foreground;
    } else if (bg) {
      r.proposal[i] = Label::Background;
    }
  }
  if (r.conflicts > 0) {
    warn("dbi fusion: " + std::to_string(r.conflicts) +
         " voxel(s) claimed as both foreground and background were set to unknown");
  }
  return r;
}

PropagationResult propagate(const ScalarVolume& x, const SkeletonAnnotation& ska,
                            const PropagationParams& p) {
  p.validate();
  if (ska.empty()) throw InvalidArgument("propagation needs a non-empty skeleton annotation");
  require_same_geometry(x.geometry(), ska.geometry(), "propagation annotation");

  PropagationResult r;
  r.smoothed = gaussian_smooth(x, p.gaussian);
  r.d_ggd = geodesic_distance(r.smoothed, ska, p.geodesic);
  r.degenerate = r.d_ggd.max() == 0.0;
  r.mp_g = g2bi(r.d_ggd, ska, p.delta1, p.delta2);
  r.d_eud = euclidean_distance(x.geometry(), ska, p.euclidean_units);
  r.mp_e = ebi(r.d_eud, ska, p.gamma);
  auto fused = dbi_fuse(r.mp_g, r.mp_e);
  r.proposal = std::move(fused.proposal);
  r.conflicts = fused.conflicts;
  return r;
}

}  // namespace skelprop
