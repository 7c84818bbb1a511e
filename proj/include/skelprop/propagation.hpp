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
 * Dual-stream buffer inference: turns a skeleton annotation into a
 * tri-state mask proposal.
 *
 *   geodesic buffer   foreground  D_ggd(i) <  delta1 * max(D_ggd)
 *                     background  D_ggd(i) >  delta2 * max(D_ggd)
 *   euclidean buffer  background  D_eud(i) >  gamma  * max(D_eud), i not a seed
 *
 * Fusion keeps the geodesic foreground and unions both backgrounds. A
 * voxel claimed by both sides is demoted to unknown and counted.
 */

#ifndef SKELPROP_PROPAGATION_HPP
#define SKELPROP_PROPAGATION_HPP

#include <cstddef>

#include "skelprop/distance.hpp"
#include "skelprop/smoothing.hpp"
#include "skelprop/volume.hpp"

namespace skelprop {

struct PropagationParams {
  double delta1 = 0.01;
  double delta2 = 0.07;
  double gamma = 0.05;
  GaussianParams gaussian{};
  GeodesicParams geodesic{};
  DistanceUnits euclidean_units = DistanceUnits::Millimeters;

  // Requires 0 <= delta1 < delta2 <= 1 and 0 <= gamma <= 1.
  void validate() const;
};

MaskProposal g2bi(const DistanceMap& d_ggd, const SkeletonAnnotation& seeds, double delta1,
                  double delta2);

MaskProposal ebi(const DistanceMap& d_eud, const SkeletonAnnotation& seeds, double gamma);

struct FusionResult {
  MaskProposal proposal;
  std::size_t conflicts = 0;
};

FusionResult dbi_fuse(const MaskProposal& mp_g, const MaskProposal& mp_e);

struct PropagationResult {
  MaskProposal proposal;  // fused
  DistanceMap d_ggd;
  DistanceMap d_eud;
  MaskProposal mp_g;
  MaskProposal mp_e;
  ScalarVolume smoothed;
  std::size_t conflicts = 0;
  bool degenerate = false;  // max(D_ggd) == 0
};

PropagationResult propagate(const ScalarVolume& x, const SkeletonAnnotation& ska,
                            const PropagationParams& p = {});

}  // namespace skelprop

#endif  // SKELPROP_PROPAGATION_HPP
