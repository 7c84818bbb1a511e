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

#include "skelprop/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "skelprop/smoothing.hpp"

namespace skelprop {

namespace {

Point3 add(const Point3& a, const Point3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Point3 scale(const Point3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Point3 normalized(const Point3& a) { return scale(a, 1.0 / std::sqrt(dot(a, a))); }

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b) {
  const Point3 ab = sub(b, a);
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(sub(p, a), ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point3 d = sub(p, add(a, scale(ab, t)));
  return std::sqrt(dot(d, d));
}

struct Segment {
  Point3 start;
  Point3 end;
  Point3 dir;
  double radius;
  double length;
  int generation;
  int parent;
};

bool fits(const Point3& p, double margin, const VolumeGeometry& g) {
  for (int a = 0; a < 3; ++a) {
    if (p[a] < margin || p[a] > static_cast<double>(g.dims[a] - 1) - margin) return false;
  }
  return true;
}

// The parent is skipped since the new segment starts on its end point.
bool clear_of(const Segment& s, const std::vector<Segment>& placed, int parent) {
  for (int k = 0; k < static_cast<int>(placed.size()); ++k) {
    if (k == parent) continue;
    const auto& o = placed[k];
    const double gap = segment_distance(s.start, s.end, o.start, o.end);
    if (gap <= s.radius + o.radius + 2.0) return false;
  }
  return true;
}

std::array<std::ptrdiff_t, 3> rounded(const Point3& p) {
  return {static_cast<std::ptrdiff_t>(std::lround(p[0])),
          static_cast<std::ptrdiff_t>(std::lround(p[1])),
          static_cast<std::ptrdiff_t>(std::lround(p[2]))};
}

}  // namespace

void PhantomSpec::validate() const {
  geometry.validate();
  if (depth < 0 || depth > 8) throw InvalidArgument("phantom depth must be in [0, 8]");
  if (!(root_radius >= 0.5)) throw InvalidArgument("phantom root radius must be >= 0.5");
  if (!(radius_decay > 0.0 && radius_decay <= 1.0)) {
    throw InvalidArgument("phantom radius decay must be in (0, 1]");
  }
  if (!(length_min >= 1.0 && length_min <= length_max)) {
    throw InvalidArgument("phantom length range must satisfy 1 <= min <= max");
  }
  if (!(angle_min_deg >= 0.0 && angle_min_deg <= angle_max_deg && angle_max_deg <= 90.0)) {
    throw InvalidArgument("phantom angle range must satisfy 0 <= min <= max <= 90");
  }
  if (!(blur_sigma >= 0.0) || !(noise_sigma >= 0.0)) {
    throw InvalidArgument("phantom blur and noise sigma must be nonnegative");
  }
  if (!std::isfinite(foreground) || !std::isfinite(background)) {
    throw InvalidArgument("phantom intensities must be finite");
  }
}

std::string describe(const PhantomSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << "dims=" << s.geometry.dims[0] << "," << s.geometry.dims[1] << "," << s.geometry.dims[2]
     << "\nspacing=" << s.geometry.spacing[0] << "," << s.geometry.spacing[1] << ","
     << s.geometry.spacing[2] << "\ndepth=" << s.depth << "\nroot_radius=" << s.root_radius
     << "\nradius_decay=" << s.radius_decay << "\nlength_min=" << s.length_min
     << "\nlength_max=" << s.length_max << "\nangle_min_deg=" << s.angle_min_deg
     << "\nangle_max_deg=" << s.angle_max_deg << "\nforeground=" << s.foreground
     << "\nbackground=" << s.background << "\nblur_sigma=" << s.blur_sigma
     << "\nnoise_sigma=" << s.noise_sigma << "\nseed=" << s.seed << "\n";
  return os.str();
}

double PortableRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double segment_distance(const Point3& p0, const Point3& p1, const Point3& q0, const Point3& q1) {
  // Closest points of two segments, clamped parametric form.
  const Point3 d1 = sub(p1, p0);
  const Point3 d2 = sub(q1, q0);
  const Point3 r = sub(p0, q0);
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  constexpr double kEps = 1e-12;
  if (a <= kEps && e <= kEps) return std::sqrt(dot(r, r));
  if (a <= kEps) return point_segment_distance(p0, q0, q1);
  if (e <= kEps) return point_segment_distance(q0, p0, p1);
  const double c = dot(d1, r);
  const double b = dot(d1, d2);
  const double denom = a * e - b * b;
  double s = denom > kEps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  const Point3 cp = add(p0, scale(d1, s));
  const Point3 cq = add(q0, scale(d2, t));
  const Point3 d = sub(cp, cq);
  return std::sqrt(dot(d, d));
}

std::vector<std::array<std::ptrdiff_t, 3>> bresenham_3d(std::array<std::ptrdiff_t, 3> a,
                                                        std::array<std::ptrdiff_t, 3> b) {
  std::array<std::ptrdiff_t, 3> delta{};
  std::array<std::ptrdiff_t, 3> step{};
  for (int k = 0; k < 3; ++k) {
    delta[k] = std::abs(b[k] - a[k]);
    step[k] = b[k] >= a[k] ? 1 : -1;
  }
  const int major = static_cast<int>(std::max_element(delta.begin(), delta.end()) - delta.begin());
  const std::ptrdiff_t n = delta[major];
  std::vector<std::array<std::ptrdiff_t, 3>> out;
  out.reserve(n + 1);
  std::array<std::ptrdiff_t, 3> p = a;
  std::array<std::ptrdiff_t, 3> err{};
  for (int k = 0; k < 3; ++k) err[k] = 2 * delta[k] - n;
  out.push_back(p);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (k == major) continue;
      if (err[k] > 0) {
        p[k] += step[k];
        err[k] -= 2 * n;
      }
      err[k] += 2 * delta[k];
    }
    p[major] += step[major];
    out.push_back(p);
  }
  return out;
}

Phantom generate_phantom(const PhantomSpec& spec) {
  spec.validate();
  const VolumeGeometry& g = spec.geometry;
  PortableRng rng(spec.seed);
  constexpr double kDeg = std::numbers::pi / 180.0;

  std::vector<Segment> placed;
  {
    const double r = spec.root_radius;
    const double margin = std::ceil(r) + 1.0;
    const Point3 start = {std::floor((g.dims[0] - 1) / 2.0), std::floor((g.dims[1] - 1) / 2.0),
                          margin};
    const double length = rng.uniform(spec.length_min, spec.length_max);
    const Point3 end = add(start, {0.0, 0.0, length});
    if (!fits(start, margin, g) || !fits(end, margin, g)) {
      throw InvalidArgument("phantom root tube does not fit inside " + to_string(g));
    }
    placed.push_back({start, end, {0.0, 0.0, 1.0}, r, length, 0, -1});
  }

  std::vector<int> frontier = {0};
  for (int gen = 1; gen <= spec.depth; ++gen) {
    std::vector<int> next;
    const double radius =
        std::max(0.5, spec.root_radius * std::pow(spec.radius_decay, static_cast<double>(gen)));
    for (int parent : frontier) {
      const Segment par = placed[parent];
      // Orthonormal frame around the parent axis.
      const Point3 helper = std::fabs(par.dir[0]) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
      const Point3 e1 = normalized(cross(par.dir, helper));
      const Point3 e2 = cross(par.dir, e1);
      const double margin = std::ceil(radius) + 1.0;

      bool done = false;
      double shrink = 1.0;
      for (int attempt = 0; attempt < 256 && !done; ++attempt) {
        if (attempt > 0 && attempt % 32 == 0) shrink *= 0.8;
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        std::array<Segment, 2> kids;
        for (int c = 0; c < 2; ++c) {
          const double theta = rng.uniform(spec.angle_min_deg, spec.angle_max_deg) * kDeg;
          const double az = phi + c * std::numbers::pi;
          const Point3 radial = add(scale(e1, std::cos(az)), scale(e2, std::sin(az)));
          const Point3 dir = normalized(add(scale(par.dir, std::cos(theta)),
                                            scale(radial, std::sin(theta))));
          const double length =
              std::max(spec.length_min * shrink, 2.0) +
              rng.uniform() * (spec.length_max - spec.length_min) * shrink;
          kids[c] = {par.end, add(par.end, scale(dir, length)), dir, radius, length, gen, parent};
        }
        bool ok = true;
        for (int c = 0; c < 2 && ok; ++c) {
          ok = fits(kids[c].end, margin, g) &&
               clear_of(kids[c], placed, parent);
        }
        if (!ok) continue;
        for (int c = 0; c < 2; ++c) {
          next.push_back(static_cast<int>(placed.size()));
          placed.push_back(kids[c]);
        }
        done = true;
      }
      if (!done) {
        throw InvalidArgument("phantom generation " + std::to_string(gen) +
                              " cannot fit inside " + to_string(g));
      }
    }
    frontier = std::move(next);
  }

  Phantom out;
  out.mask = BinaryMask(g);
  std::vector<std::uint8_t> centerline(g.voxel_count(), 0);
  for (std::size_t k = 0; k < placed.size(); ++k) {
    const auto& s = placed[k];
    PhantomBranch b;
    b.start = s.start;
    b.end = s.end;
    b.radius = s.radius;
    b.generation = s.generation;
    b.parent = s.parent;
    Point3 phys = sub(s.end, s.start);
    for (int a = 0; a < 3; ++a) phys[a] *= g.spacing[a];
    b.length_mm = std::sqrt(dot(phys, phys));
    for (const auto& p : bresenham_3d(rounded(s.start), rounded(s.end))) {
      const std::size_t idx = g.linear(p[0], p[1], p[2]);
      b.voxels.push_back(idx);
      centerline[idx] = 1;
    }

    std::array<std::ptrdiff_t, 3> lo{};
    std::array<std::ptrdiff_t, 3> hi{};
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::max<std::ptrdiff_t>(
          0, static_cast<std::ptrdiff_t>(std::floor(std::min(s.start[a], s.end[a]) - s.radius)));
      hi[a] = std::min<std::ptrdiff_t>(
          static_cast<std::ptrdiff_t>(g.dims[a]) - 1,
          static_cast<std::ptrdiff_t>(std::ceil(std::max(s.start[a], s.end[a]) + s.radius)));
    }
    for (std::ptrdiff_t z = lo[2]; z <= hi[2]; ++z)
      for (std::ptrdiff_t y = lo[1]; y <= hi[1]; ++y)
        for (std::ptrdiff_t x = lo[0]; x <= hi[0]; ++x) {
          const Point3 c = {static_cast<double>(x), static_cast<double>(y), static_cast<double>(z)};
          if (point_segment_distance(c, s.start, s.end) <= s.radius) {
            out.mask[g.linear(x, y, z)] = 1;
          }
        }
    out.tree_length_mm += b.length_mm;
    out.branches.push_back(std::move(b));
  }

  std::vector<std::size_t> skel;
  for (std::size_t i = 0; i < centerline.size(); ++i) {
    if (centerline[i]) {
      skel.push_back(i);
      out.mask[i] = 1;
    }
  }
  out.skeleton = SkeletonAnnotation(g, std::move(skel));

  ScalarVolume image(g);
  const double contrast = spec.foreground - spec.background;
  for (std::size_t i = 0; i < image.size(); ++i) {
    image[i] = static_cast<float>(spec.background + contrast * out.mask[i]);
  }
  if (spec.blur_sigma > 0.0) image = gaussian_smooth(image, {spec.blur_sigma, 0});
  if (spec.noise_sigma > 0.0) {
    PortableRng noise(spec.seed ^ 0x9E3779B97F4A7C15ull);
    for (std::size_t i = 0; i < image.size(); ++i) {
      image[i] = static_cast<float>(image[i] + spec.noise_sigma * noise.normal());
    }
  }
  out.image = std::move(image);
  return out;
}

std::string branch_table(const Phantom& p) {
  std::ostringstream os;
  os.precision(10);
  os << "# id generation parent radius length_mm start_x start_y start_z end_x end_y end_z "
        "voxels\n";
  for (std::size_t k = 0; k < p.branches.size(); ++k) {
    const auto& b = p.branches[k];
    os << k << ' ' << b.generation << ' ' << b.parent << ' ' << b.radius << ' ' << b.length_mm;
    for (double v : b.start) os << ' ' << v;
    for (double v : b.end) os << ' ' << v;
    os << ' ' << b.voxels.size() << '\n';
  }
  os << "# tree_length_mm " << p.tree_length_mm << '\n';
  return os.str();
}

}  // namespace skelprop
