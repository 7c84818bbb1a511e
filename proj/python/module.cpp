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

// Python bindings. Arrays are C-ordered (z, y, x); spacing tuples follow the
// same order.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skelprop/distance.hpp"
#include "skelprop/iggd.hpp"
#include "skelprop/io.hpp"
#include "skelprop/losses.hpp"
#include "skelprop/metrics.hpp"
#include "skelprop/parallel.hpp"
#include "skelprop/phantom.hpp"
#include "skelprop/propagation.hpp"
#include "skelprop/skeleton.hpp"
#include "skelprop/smoothing.hpp"

namespace py = pybind11;
using namespace skelprop;

namespace {

using Spacing = std::array<double, 3>;  // (z, y, x)

const Spacing kUnit{1.0, 1.0, 1.0};

template <class T>
using Array = py::array_t<T, py::array::c_style | py::array::forcecast>;

template <class T>
VolumeGeometry geometry_of(const Array<T>& a, const Spacing& s) {
  if (a.ndim() != 3) {
    throw InvalidArgument("expected a 3-d array, got " + std::to_string(a.ndim()) + " dimensions");
  }
  return VolumeGeometry({static_cast<std::size_t>(a.shape(2)), static_cast<std::size_t>(a.shape(1)),
                         static_cast<std::size_t>(a.shape(0))},
                        {s[2], s[1], s[0]});
}

template <class T>
std::vector<T> values_of(const Array<T>& a) {
  return std::vector<T>(a.data(), a.data() + a.size());
}

ScalarVolume scalar(const Array<float>& a, const Spacing& s) {
  return ScalarVolume(geometry_of(a, s), values_of(a));
}

BinaryMask mask(const Array<float>& a, const Spacing& s) { return to_mask(scalar(a, s)); }

PredictionVolume prediction(const Array<double>& a, const char* what) {
  std::vector<double> v = values_of(a);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
      throw InvalidArgument(std::string(what) + " voxel " + std::to_string(i) + " = " +
                            std::to_string(v[i]) + " is outside [0, 1]");
    }
  }
  return PredictionVolume(geometry_of(a, kUnit), std::move(v));
}

// Output array with the geometry's (z, y, x) shape.
template <class T, class Range>
py::array_t<T> to_array(const VolumeGeometry& g, const Range& values) {
  py::array_t<T> out({g.dims[2], g.dims[1], g.dims[0]});
  T* dst = out.mutable_data();
  std::size_t i = 0;
  for (const auto& v : values) dst[i++] = static_cast<T>(v);
  return out;
}

py::array_t<std::uint8_t> proposal_array(const MaskProposal& p) {
  return to_array<std::uint8_t>(p.geometry(), p.values());
}

Spacing spacing_zyx(const VolumeGeometry& g) { return {g.spacing[2], g.spacing[1], g.spacing[0]}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Skeleton-supervised label propagation for tubular structures.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("set_thread_count", &set_thread_count, py::arg("n"));

  m.def(
      "gaussian_smooth",
      [](const Array<float>& image, double sigma, int radius) {
        const ScalarVolume v = scalar(image, kUnit);
        ScalarVolume out;
        {
          py::gil_scoped_release release;
          out = gaussian_smooth(v, {sigma, radius});
        }
        return to_array<float>(out.geometry(), out.values());
      },
      py::arg("image"), py::arg("sigma") = 1.0, py::arg("radius") = 0);

  m.def(
      "geodesic_distance",
      [](const Array<float>& smoothed, const Array<float>& seeds, int connectivity,
         double spatial_weight, const Spacing& spacing) {
        const ScalarVolume v = scalar(smoothed, spacing);
        const SkeletonAnnotation s = SkeletonAnnotation::from_mask(mask(seeds, spacing));
        const GeodesicParams p{parse_connectivity(connectivity), spatial_weight};
        DistanceMap d;
        {
          py::gil_scoped_release release;
          d = geodesic_distance(v, s, p);
        }
        return to_array<double>(d.geometry(), d.values());
      },
      py::arg("smoothed"), py::arg("seeds"), py::arg("connectivity") = 26,
      py::arg("spatial_weight") = 0.0, py::arg("spacing") = kUnit);

  m.def(
      "euclidean_distance",
      [](const Array<float>& seeds, const Spacing& spacing, const std::string& units) {
        const SkeletonAnnotation s = SkeletonAnnotation::from_mask(mask(seeds, spacing));
        const DistanceMap d = euclidean_distance(s.geometry(), s, parse_units(units));
        return to_array<double>(d.geometry(), d.values());
      },
      py::arg("seeds"), py::arg("spacing") = kUnit, py::arg("units") = "mm");

  m.def(
      "inverse_geodesic",
      [](const Array<double>& d_ggd, double c) {
        const DistanceMap d(geometry_of(d_ggd, kUnit), DistanceKind::Geodesic, values_of(d_ggd));
        const DistanceMap q = inverse_geodesic(d, {c});
        return to_array<double>(q.geometry(), q.values());
      },
      py::arg("d_ggd"), py::arg("c") = 1.0);

  m.def(
      "propagate",
      [](const Array<float>& image, const Array<float>& skeleton, double delta1, double delta2,
         double gamma, double sigma, int radius, int connectivity, double spatial_weight,
         const std::string& units, const Spacing& spacing) {
        const ScalarVolume x = scalar(image, spacing);
        const SkeletonAnnotation s = SkeletonAnnotation::from_mask(mask(skeleton, spacing));
        PropagationParams p;
        p.delta1 = delta1;
        p.delta2 = delta2;
        p.gamma = gamma;
        p.gaussian = {sigma, radius};
        p.geodesic = {parse_connectivity(connectivity), spatial_weight};
        p.euclidean_units = parse_units(units);
        PropagationResult r;
        {
          py::gil_scoped_release release;
          r = propagate(x, s, p);
        }
        py::dict out;
        out["proposal"] = proposal_array(r.proposal);
        out["mp_g"] = proposal_array(r.mp_g);
        out["mp_e"] = proposal_array(r.mp_e);
        out["d_ggd"] = to_array<double>(r.d_ggd.geometry(), r.d_ggd.values());
        out["d_eud"] = to_array<double>(r.d_eud.geometry(), r.d_eud.values());
        out["conflicts"] = r.conflicts;
        out["degenerate"] = r.degenerate;
        return out;
      },
      py::arg("image"), py::arg("skeleton"), py::arg("delta1") = 0.01, py::arg("delta2") = 0.07,
      py::arg("gamma") = 0.05, py::arg("sigma") = 1.0, py::arg("radius") = 0,
      py::arg("connectivity") = 26, py::arg("spatial_weight") = 0.0, py::arg("units") = "mm",
      py::arg("spacing") = kUnit);

  m.def(
      "losses",
      [](const Array<double>& pred, const Array<double>& pred_map, const Array<float>& proposal,
         const Array<double>& target, double lambda1, double lambda2, const std::string& em_mode) {
        const PredictionVolume p = prediction(pred, "pred");
        const PredictionVolume pm = prediction(pred_map, "pred_map");
        const MaskProposal mp = to_proposal(scalar(proposal, kUnit));
        const DistanceMap t(geometry_of(target, kUnit), DistanceKind::InverseGeodesic,
                            values_of(target));
        const LossReport r =
            evaluate_losses(p, pm, mp, t, {lambda1, lambda2}, parse_entropy_mode(em_mode));
        py::dict out;
        out["pce"] = r.pce;
        out["em"] = r.em;
        out["iggd_mse"] = r.iggd_mse;
        out["total"] = r.total;
        out["labeled"] = r.labeled;
        out["unlabeled"] = r.unlabeled;
        out["voxels"] = r.voxels;
        return out;
      },
      py::arg("pred"), py::arg("pred_map"), py::arg("proposal"), py::arg("target"),
      py::arg("lambda1") = 1.5, py::arg("lambda2") = 20.0, py::arg("em_mode") = "binary");

  m.def(
      "skeletonize",
      [](const Array<float>& m_) {
        const BinaryMask bm = mask(m_, kUnit);
        SkeletonAnnotation s;
        {
          py::gil_scoped_release release;
          s = skeletonize(bm);
        }
        const BinaryMask out = s.to_mask();
        return to_array<std::uint8_t>(out.geometry(), out.values());
      },
      py::arg("mask"));

  m.def(
      "skeleton_graph",
      [](const Array<float>& skeleton, const Spacing& spacing) {
        const SkeletonAnnotation s = SkeletonAnnotation::from_mask(mask(skeleton, spacing));
        const SkeletonGraph g = build_graph(s);
        py::dict out;
        out["branches"] = g.branches().size();
        out["endpoints"] = g.endpoint_count();
        out["junctions"] = g.junction_count();
        out["tree_length"] = g.tree_length();
        out["edge_list"] = g.edge_list();
        return out;
      },
      py::arg("skeleton"), py::arg("spacing") = kUnit);

  m.def(
      "metrics",
      [](const Array<float>& pred, const Array<float>& ref,
         const std::optional<Array<float>>& ref_skeleton, const Spacing& spacing,
         const std::string& units) {
        const BinaryMask p = mask(pred, spacing);
        const BinaryMask r = mask(ref, spacing);
        LengthMode mode = LengthMode::Millimeters;
        if (units == "voxels") {
          mode = LengthMode::Voxels;
        } else if (units != "mm") {
          throw InvalidArgument("units must be mm or voxels, got " + units);
        }
        const SkeletonAnnotation s = ref_skeleton
                                         ? SkeletonAnnotation::from_mask(mask(*ref_skeleton, spacing))
                                         : skeletonize(r);
        const MetricsReport m_ = evaluate_segmentation(p, r, build_graph(s, r.geometry()), mode);
        py::dict out;
        out["dsc"] = m_.volumetric.dsc;
        out["tpr"] = m_.volumetric.tpr;
        out["fpr"] = m_.volumetric.fpr;
        out["bd"] = m_.topology.bd;
        out["bd_star"] = m_.topology.bd_star;
        out["td"] = m_.topology.td;
        out["branches"] = m_.topology.branches;
        return out;
      },
      py::arg("pred"), py::arg("ref"), py::arg("ref_skeleton") = py::none(),
      py::arg("spacing") = kUnit, py::arg("units") = "mm");

  m.def(
      "largest_component",
      [](const Array<float>& m_) {
        const BinaryMask out = largest_component(mask(m_, kUnit));
        return to_array<std::uint8_t>(out.geometry(), out.values());
      },
      py::arg("mask"));

  m.def(
      "phantom",
      [](const std::array<std::size_t, 3>& shape, int depth, std::uint64_t seed, double root_radius,
         double blur, double noise, const Spacing& spacing) {
        PhantomSpec spec;
        spec.geometry = VolumeGeometry({shape[2], shape[1], shape[0]},
                                       {spacing[2], spacing[1], spacing[0]});
        spec.depth = depth;
        spec.seed = seed;
        spec.root_radius = root_radius;
        spec.blur_sigma = blur;
        spec.noise_sigma = noise;
        Phantom ph;
        {
          py::gil_scoped_release release;
          ph = generate_phantom(spec);
        }
        const BinaryMask sk = ph.skeleton.to_mask();
        py::dict out;
        out["image"] = to_array<float>(ph.image.geometry(), ph.image.values());
        out["mask"] = to_array<std::uint8_t>(ph.mask.geometry(), ph.mask.values());
        out["skeleton"] = to_array<std::uint8_t>(sk.geometry(), sk.values());
        out["branches"] = ph.branches.size();
        out["tree_length_mm"] = ph.tree_length_mm;
        return out;
      },
      py::arg("shape") = std::array<std::size_t, 3>{64, 64, 64}, py::arg("depth") = 3,
      py::arg("seed") = 1, py::arg("root_radius") = 2.5, py::arg("blur") = 1.0,
      py::arg("noise") = 0.05, py::arg("spacing") = kUnit);

  m.def(
      "load_volume",
      [](const std::string& path) {
        const ScalarVolume v = load_volume(path);
        return py::make_tuple(to_array<float>(v.geometry(), v.values()), spacing_zyx(v.geometry()));
      },
      py::arg("path"));

  m.def(
      "save_volume",
      [](const std::string& path, const Array<float>& values, const Spacing& spacing) {
        save_volume(scalar(values, spacing), path, format_from_path(path));
      },
      py::arg("path"), py::arg("values"), py::arg("spacing") = kUnit);
}
