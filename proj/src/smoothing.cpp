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

#include "skelprop/smoothing.hpp"

#include <cmath>
#include <string>

#include "skelprop/parallel.hpp"

namespace skelprop {

int GaussianParams::effective_radius() const {
  return radius > 0 ? radius : std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
}

void GaussianParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("gaussian sigma must be positive, got " + std::to_string(sigma));
  }
  if (radius < 0) {
    throw InvalidArgument("gaussian radius must be >= 0 (0 selects ceil(3 sigma)), got " + std::to_string(radius));
  }
}

std::vector<double> gaussian_kernel(const GaussianParams& p) {
  p.validate();
  const int r = p.effective_radius();
  std::vector<double> w(2 * r + 1);
  double sum = 0.0;
  for (int k = -r; k <= r; ++k) {
    w[k + r] = std::exp(-0.5 * (k * k) / (p.sigma * p.sigma));
    sum += w[k + r];
  }
  for (double& x : w) x /= sum;
  return w;
}

std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) noexcept {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - 1 - m);
}

namespace {

void convolve_axis(const std::vector<double>& in, std::vector<double>& out,
                   const VolumeGeometry& g, int axis, const std::vector<double>& w) {
  const auto& d = g.dims;
  const std::size_t n = d[axis];
  const std::size_t stride = axis == 0 ? 1 : axis == 1 ? d[0] : d[0] * d[1];
  const std::size_t lines = g.voxel_count() / n;
  const auto r = static_cast<std::ptrdiff_t>(w.size() / 2);

  std::vector<std::size_t> src(n + 2 * r);
  for (std::ptrdiff_t i = -r; i < static_cast<std::ptrdiff_t>(n) + r; ++i) {
    src[i + r] = reflect_index(i, n);
  }

  parallel_for(lines, [&](std::size_t begin, std::size_t end) {
    std::vector<double> line(n);
    for (std::size_t l = begin; l < end; ++l) {
      std::size_t base;
      if (axis == 0) {
        base = l * d[0];
      } else if (axis == 1) {
        base = (l % d[0]) + (l / d[0]) * d[0] * d[1];
      } else {
        base = l;
      }
      for (std::size_t i = 0; i < n; ++i) line[i] = in[base + i * stride];
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t k = -r; k <= r; ++k) {
          acc += w[k + r] * line[src[i + k + r]];
        }
        out[base + i * stride] = acc;
      }
    }
  });
}

}  // namespace

ScalarVolume gaussian_smooth(const ScalarVolume& v, const GaussianParams& p) {
  return gaussian_smooth(v, p, {0, 1, 2});
}

ScalarVolume gaussian_smooth(const ScalarVolume& v, const GaussianParams& p,
                             std::array<int, 3> axis_order) {
  const auto w = gaussian_kernel(p);
  std::array<bool, 3> seen{};
  for (int a : axis_order) {
    if (a < 0 || a > 2 || seen[a]) throw InvalidArgument("axis order must permute {0, 1, 2}");
    seen[a] = true;
  }
  std::vector<double> a(v.data().begin(), v.data().end());
  std::vector<double> b(a.size());
  for (int axis : axis_order) {
    convolve_axis(a, b, v.geometry(), axis, w);
    a.swap(b);
  }
  std::vector<float> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<float>(a[i]);
  return ScalarVolume(v.geometry(), std::move(out));
}

}  // namespace skelprop
