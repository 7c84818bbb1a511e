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

#ifndef SKELPROP_IGGD_HPP
#define SKELPROP_IGGD_HPP

#include "skelprop/volume.hpp"

namespace skelprop {

struct InverseParams {
  double c = 1.0;  // offset, > 0

  void validate() const;
};

// Per voxel 1 / (d + c). With c = 1 and d >= 0 the result lies in (0, 1]
// and equals 1 exactly on seeds. No rescaling of d is applied.
DistanceMap inverse_geodesic(const DistanceMap& d_ggd, const InverseParams& p = {});

}  // namespace skelprop

#endif  // SKELPROP_IGGD_HPP
