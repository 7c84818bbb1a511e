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

#ifndef SKELPROP_SMOOTHING_HPP
#define SKELPROP_SMOOTHING_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "skelprop/volume.hpp"

namespace skelprop {

struct GaussianParams {
  double sigma = 1.0;  // standard deviation, voxels
  int radius = 0;      // kernel half-width in voxels; 0 selects ceil(3 sigma)

  int effective_radius() const;
  void validate() const;
};

// Normalized, truncated 1D kernel of length 2 * radius + 1 (sums to 1).
std::vector<double> gaussian_kernel(const GaussianParams& p);

// Maps an out-of-range coordinate onto [0, n) by half-sample symmetric
// reflection (... c b a | a b c ... ), repeated as often as needed.
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) noexcept;

// Separable Gaussian filter: x, then y, then z passes by default. The
// intermediate buffer is kept in double precision; the result is rounded
// to f32 once at the end.
ScalarVolume gaussian_smooth(const ScalarVolume& v, const GaussianParams& p);
ScalarVolume gaussian_smooth(const ScalarVolume& v, const GaussianParams& p,
                             std::array<int, 3> axis_order);

}  // namespace skelprop

#endif  // SKELPROP_SMOOTHING_HPP
