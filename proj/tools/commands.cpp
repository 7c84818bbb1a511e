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

#include "commands.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "manifest.hpp"
#include "skelprop/distance.hpp"
#include "skelprop/iggd.hpp"
#include "skelprop/io.hpp"
#include "skelprop/losses.hpp"
#include "skelprop/metrics.hpp"
#include "skelprop/parallel.hpp"
#include "skelprop/phantom.hpp"
#include "skelprop/propagation.hpp"
#include "skelprop/skeleton.hpp"

namespace skelprop::cli {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}
std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(unsigned v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(const std::string& v) { return v; }
std::string fmt(const char* v) { return v; }

// Collects the resolved run configuration and writes outputs with their
// manifest sidecars.
class Run {
 public:
  Run(std::string command, const CommonOptions& c) : common_(c), start_(Clock::now()) {
    manifest_.command = std::move(command);
    manifest_.version = SKELPROP_VERSION;
    if (c.threads == 0) throw UsageError("--threads must be at least 1");
    try {
      format_ = parse_format(c.format);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    param("threads", c.threads);
    param("format", to_string(format_));
    input("config", c.config);
  }

  template <class T>
  void param(const std::string& key, const T& value) {
    manifest_.params.emplace_back(key, fmt(value));
  }

  void input(const std::string& role, const std::string& path) {
    if (path.empty()) return;
    manifest_.inputs.push_back({role, fs::path(path), sha256_file(path)});
  }

  FileFormat format() const { return format_; }

  fs::path target(const std::string& name) const {
    return fs::path(common_.out_dir) / (common_.prefix + name);
  }
  fs::path volume_target(const std::string& stem) const {
    return target(stem + (format_ == FileFormat::Nifti1 ? ".nii" : ".rvol"));
  }

  // Creates the directory that will hold `p`.
  static void prepare_parent(const fs::path& p) {
    const fs::path dir = p.parent_path();
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  void prepare_output_dir() const { prepare_parent(target("x")); }

  // Records an output written by the caller; manifests are emitted by
  // finish() once every output exists.
  void wrote(const fs::path& p) { outputs_.push_back(p); }

  void write_text(const fs::path& p, const std::string& text) {
    write_file_atomic(p, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    wrote(p);
  }

  void finish() {
    manifest_.duration_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    for (const auto& p : outputs_) write_manifest(manifest_, p);
  }

 private:
  CommonOptions common_;
  FileFormat format_ = FileFormat::RawRvol;
  Clock::time_point start_;
  RunManifest manifest_;
  std::vector<fs::path> outputs_;
};

void kv(const std::string& key, const std::string& value) { std::cout << key << '=' << value << '\n'; }

template <class F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run_propagate(const CommonOptions& c, const PropagateOptions& o) {
  Run run("propagate", c);
  PropagationParams p;
  p.delta1 = o.delta1;
  p.delta2 = o.delta2;
  p.gamma = o.gamma;
  p.gaussian = {o.sigma, o.radius};
  InverseParams inv{o.iggd_c};
  as_usage([&] {
    p.geodesic = {parse_connectivity(o.connectivity), o.spatial_weight};
    p.euclidean_units = parse_units(o.units);
    p.validate();
    inv.validate();
    return 0;
  });
  run.param("sigma", o.sigma);
  run.param("radius", p.gaussian.effective_radius());
  run.param("delta1", o.delta1);
  run.param("delta2", o.delta2);
  run.param("gamma", o.gamma);
  run.param("connectivity", o.connectivity);
  run.param("spatial_weight", o.spatial_weight);
  run.param("spatial_weight_is_default", o.spatial_weight == 0.0);
  run.param("units", o.units);
  run.param("iggd_c", o.iggd_c);

  set_thread_count(c.threads);
  run.input("image", o.image);
  run.input("skeleton", o.skeleton);
  const ScalarVolume image = load_volume(o.image);
  const SkeletonAnnotation ska = skeleton_from_mask_file(o.skeleton);
  require_same_geometry(image.geometry(), ska.geometry(), "image and skeleton");

  const PropagationResult r = propagate(image, ska, p);
  const DistanceMap iggd = inverse_geodesic(r.d_ggd, inv);

  run.prepare_output_dir();
  const fs::path proposal = run.volume_target("mask_proposal");
  const fs::path d_ggd = run.volume_target("d_ggd");
  const fs::path d_iggd = run.volume_target("d_iggd");
  save_volume(r.proposal, proposal, run.format());
  run.wrote(proposal);
  save_volume(r.d_ggd, d_ggd, run.format());
  run.wrote(d_ggd);
  save_volume(iggd, d_iggd, run.format());
  run.wrote(d_iggd);
  if (o.write_eud) {
    const fs::path d_eud = run.volume_target("d_eud");
    save_volume(r.d_eud, d_eud, run.format());
    run.wrote(d_eud);
  }
  run.finish();

  const ProposalCounts n = count_labels(r.proposal);
  kv("seeds", fmt(ska.size()));
  kv("foreground", fmt(n.foreground));
  kv("background", fmt(n.background));
  kv("unknown", fmt(n.unknown));
  kv("conflicts", fmt(r.conflicts));
  kv("degenerate", fmt(r.degenerate));
  kv("max_d_ggd", fmt(r.d_ggd.max()));
  kv("max_d_eud", fmt(r.d_eud.max()));
  kv("proposal", proposal.string());
  return 0;
}

int run_skeletonize(const CommonOptions& c, const SkeletonizeOptions& o) {
  Run run("skeletonize", c);
  run.param("graph", o.graph);
  set_thread_count(c.threads);
  run.input("mask", o.mask);
  const BinaryMask mask = to_mask(load_volume(o.mask));
  const SkeletonAnnotation s = skeletonize(mask);
  const SkeletonGraph graph = build_graph(s);

  run.prepare_output_dir();
  const fs::path out = run.volume_target("skeleton");
  save_volume(s.to_mask(), out, run.format());
  run.wrote(out);
  if (o.graph) run.write_text(run.target("skeleton_graph.txt"), graph.edge_list());
  run.finish();

  std::size_t fg = 0;
  for (auto v : mask.values()) fg += v != 0;
  kv("mask_voxels", fmt(fg));
  kv("skeleton_voxels", fmt(s.size()));
  kv("skeleton_fraction", fmt(double(s.size()) / double(fg)));
  kv("branches", fmt(graph.branches().size()));
  kv("endpoints", fmt(graph.endpoint_count()));
  kv("junctions", fmt(graph.junction_count()));
  kv("tree_length_mm", fmt(graph.tree_length()));
  kv("skeleton", out.string());
  return 0;
}

int run_metrics(const CommonOptions& c, const MetricsOptions& o) {
  Run run("metrics", c);
  LengthMode mode = LengthMode::Millimeters;
  if (o.units == "voxels") {
    mode = LengthMode::Voxels;
  } else if (o.units != "mm") {
    throw UsageError("--units must be mm or voxels");
  }
  if (!(o.bd_fraction > 0.0 && o.bd_fraction <= 1.0)) {
    throw UsageError("--bd-fraction must lie in (0, 1]");
  }
  run.param("proposal", o.proposal);
  run.param("units", o.units);
  run.param("bd_fraction", o.bd_fraction);
  run.param("ref_skeleton_source", o.ref_skeleton.empty() ? "derived" : "file");

  set_thread_count(c.threads);
  run.input("pred", o.pred);
  run.input("ref", o.ref);
  run.input("ref_skeleton", o.ref_skeleton);
  const ScalarVolume pv = load_volume(o.pred);
  BinaryMask pred(pv.geometry());
  if (o.proposal) {
    const MaskProposal mp = to_proposal(pv);
    for (std::size_t i = 0; i < mp.size(); ++i) pred[i] = mp[i] == Label::Foreground;
  } else {
    pred = to_mask(pv);
  }
  const BinaryMask ref = to_mask(load_volume(o.ref));
  require_same_geometry(pred.geometry(), ref.geometry(), "prediction and reference");
  const SkeletonAnnotation ska =
      o.ref_skeleton.empty() ? skeletonize(ref) : skeleton_from_mask_file(o.ref_skeleton);
  const SkeletonGraph graph = build_graph(ska, ref.geometry());

  const BinaryMask kept = largest_component(pred);
  const VolumetricMetrics vm = volumetric_metrics(kept, ref);
  const TopologyMetrics tm = topology_metrics(kept, graph, mode, o.bd_fraction);

  nlohmann::ordered_json j;
  j["dsc"] = vm.dsc;
  j["tpr"] = vm.tpr;
  j["fpr"] = vm.fpr;
  j["bd"] = tm.bd;
  j["bd_star"] = tm.bd_star;
  j["td"] = tm.td;
  j["tp"] = vm.counts.tp;
  j["fp"] = vm.counts.fp;
  j["tn"] = vm.counts.tn;
  j["fn"] = vm.counts.fn;
  j["branches"] = tm.branches;
  j["branches_detected"] = tm.detected;
  j["branches_detected_any"] = tm.detected_any;
  j["reference_length"] = tm.reference_length;
  j["detected_length"] = tm.detected_length;
  j["length_units"] = o.units;

  if (!o.json.empty()) {
    Run::prepare_parent(run.target(o.json));
    run.write_text(run.target(o.json), dump_json(j));
  }
  run.finish();

  for (const auto& [k, v] : j.items()) {
    kv(k, v.is_string() ? v.get<std::string>()
                        : v.is_number_float() ? fmt(v.get<double>()) : v.dump());
  }
  return 0;
}

int run_losses(const CommonOptions& c, const LossesOptions& o) {
  Run run("losses", c);
  const LossWeights w{o.lambda1, o.lambda2};
  const EntropyMode mode = as_usage([&] {
    w.validate();
    return parse_entropy_mode(o.em_mode);
  });
  run.param("lambda1", o.lambda1);
  run.param("lambda2", o.lambda2);
  run.param("em_mode", o.em_mode);

  set_thread_count(c.threads);
  run.input("pred", o.pred);
  run.input("pred_map", o.pred_map);
  run.input("proposal", o.proposal);
  run.input("target", o.target);
  const PredictionVolume pred = to_prediction(load_volume(o.pred));
  const PredictionVolume pred_map = to_prediction(load_volume(o.pred_map));
  const MaskProposal proposal = to_proposal(load_volume(o.proposal));
  const ScalarVolume tv = load_volume(o.target);
  DistanceMap target(tv.geometry(), DistanceKind::InverseGeodesic);
  for (std::size_t i = 0; i < tv.size(); ++i) target[i] = tv[i];

  const LossReport r = evaluate_losses(pred, pred_map, proposal, target, w, mode);

  nlohmann::ordered_json j;
  j["pce"] = r.pce;
  j["em"] = r.em;
  j["iggd_mse"] = r.iggd_mse;
  j["total"] = r.total;
  j["lambda1"] = o.lambda1;
  j["lambda2"] = o.lambda2;
  j["em_mode"] = o.em_mode;
  j["labeled"] = r.labeled;
  j["unlabeled"] = r.unlabeled;
  j["voxels"] = r.voxels;

  if (!o.json.empty()) {
    Run::prepare_parent(run.target(o.json));
    run.write_text(run.target(o.json), dump_json(j));
  }
  run.finish();

  for (const auto& [k, v] : j.items()) {
    kv(k, v.is_string() ? v.get<std::string>()
                        : v.is_number_float() ? fmt(v.get<double>()) : v.dump());
  }
  return 0;
}

int run_phantom(const CommonOptions& c, const PhantomOptions& o) {
  Run run("phantom", c);
  if (o.dims.size() != 3 || o.spacing.size() != 3) {
    throw UsageError("--dims and --spacing take three values");
  }
  PhantomSpec spec;
  as_usage([&] {
    spec.geometry = VolumeGeometry({o.dims[0], o.dims[1], o.dims[2]},
                                   {o.spacing[0], o.spacing[1], o.spacing[2]});
    spec.depth = o.depth;
    spec.root_radius = o.root_radius;
    spec.radius_decay = o.radius_decay;
    spec.length_min = o.length_min;
    spec.length_max = o.length_max;
    spec.angle_min_deg = o.angle_min;
    spec.angle_max_deg = o.angle_max;
    spec.foreground = o.foreground;
    spec.background = o.background;
    spec.blur_sigma = o.blur;
    spec.noise_sigma = o.noise;
    spec.seed = o.seed;
    spec.validate();
    return 0;
  });
  {
    std::istringstream lines(describe(spec));
    std::string line;
    while (std::getline(lines, line)) {
      const auto eq = line.find('=');
      run.param(line.substr(0, eq), line.substr(eq + 1));
    }
  }

  set_thread_count(c.threads);
  const Phantom ph = generate_phantom(spec);

  run.prepare_output_dir();
  const fs::path image = run.volume_target("phantom_image");
  const fs::path mask = run.volume_target("phantom_mask");
  const fs::path skel = run.volume_target("phantom_skeleton");
  save_volume(ph.image, image, run.format());
  run.wrote(image);
  save_volume(ph.mask, mask, run.format());
  run.wrote(mask);
  save_volume(ph.skeleton.to_mask(), skel, run.format());
  run.wrote(skel);
  run.write_text(run.target("phantom_branches.txt"), branch_table(ph));
  run.write_text(run.target("phantom_spec.txt"), describe(spec));
  run.finish();

  std::size_t fg = 0;
  for (auto v : ph.mask.values()) fg += v;
  kv("branches", fmt(ph.branches.size()));
  kv("mask_voxels", fmt(fg));
  kv("skeleton_voxels", fmt(ph.skeleton.size()));
  kv("annotation_fraction", fmt(annotation_fraction(ph.skeleton, ph.mask)));
  kv("tree_length_mm", fmt(ph.tree_length_mm));
  kv("image", image.string());
  kv("mask", mask.string());
  kv("skeleton", skel.string());
  return 0;
}

int run_convert(const CommonOptions& c, const ConvertOptions& o) {
  Run run("convert", c);
  const StoredType dtype = as_usage([&] { return parse_stored_type(o.dtype); });
  const fs::path out = run.target(o.output);
  const FileFormat format = as_usage([&] { return format_from_path(out); });
  run.param("dtype", o.dtype);
  run.param("output_format", to_string(format));

  run.input("input", o.input);
  const ScalarVolume v = load_volume(o.input);
  Run::prepare_parent(out);
  save_volume(v, out, format, dtype);
  run.wrote(out);
  run.finish();

  kv("dims", fmt(v.geometry().dims[0]) + "," + fmt(v.geometry().dims[1]) + "," +
                 fmt(v.geometry().dims[2]));
  kv("format", to_string(format));
  kv("output", out.string());
  return 0;
}

}  // namespace skelprop::cli
