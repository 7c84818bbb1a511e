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

#include "skelprop/iggd.hpp"

#include <cmath>
#include <string>

namespace skelprop {

void InverseParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidArgument("inverse offset c must be positive, got " + std::to_string(c));
  }
}

DistanceMap inverse_geodesic(const DistanceMap& d_ggd, const InverseParams& p) {
  p.validate();
  if (d_ggd.kind() != DistanceKind::Geodesic) {
    throw InvalidArgument(std::string("inverse transform expects a geodesic map, got ") +
                          to_string(d_ggd.kind()));
  }
  DistanceMap out(d_ggd.geometry(), DistanceKind::InverseGeodesic);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d = d_ggd[i];
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw InvalidArgument("geodesic distance at voxel " + std::to_string(i) +
                            " is negative or non-finite");
    }
    out[i] = 1.0 / (d + p.c);
  }
  return out;
}

}  // namespace skelprop
