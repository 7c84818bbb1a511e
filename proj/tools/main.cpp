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

// skelprop command-line entry point.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "skelprop/volume.hpp"

namespace cli = skelprop::cli;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void add_common(CLI::App* app, cli::CommonOptions& c, bool writes_volumes) {
  app->fallthrough();
  app->footer("Options can also be read with: skelprop --config FILE " + app->get_name() +
              ", FILE holding a [" + app->get_name() + "] section.");
  app->add_option("--out-dir", c.out_dir, "Output directory")
      ->envname("SKELPROP_OUTPUT_DIR")
      ->capture_default_str();
  app->add_option("--prefix", c.prefix, "Prefix prepended to every output file name")
      ->capture_default_str();
  if (writes_volumes) {
    app->add_option("--format", c.format, "Output volume format")
        ->check(CLI::IsMember({"raw-rvol", "nifti1"}))
        ->capture_default_str();
  }
  app->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skelprop: skeleton-supervised label propagation for tubular structures"};
  app.set_version_flag("--version", SKELPROP_VERSION);
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);

  cli::CommonOptions common;
  app.set_config("--config", "",
                 "TOML/INI file; keys go under a [subcommand] section and flags take precedence")
      ->each([&common](const std::string& path) { common.config = path; });

  cli::PropagateOptions prop;
  CLI::App* propagate = app.add_subcommand(
      "propagate", "Image + skeleton annotation -> mask proposal, D_ggd and D_iggd");
  add_common(propagate, common, true);
  propagate->add_option("--image", prop.image, "Input intensity volume")->required();
  propagate->add_option("--skeleton", prop.skeleton, "Skeleton annotation (nonzero voxels)")
      ->required();
  propagate->add_option("--sigma", prop.sigma, "σ: Gaussian smoothing std. dev. in voxels")
      ->capture_default_str();
  propagate->add_option("--radius", prop.radius, "Gaussian kernel half-width; 0 = ceil(3σ)")
      ->capture_default_str();
  propagate->add_option("--delta1", prop.delta1,
                        "δ₁: geodesic foreground threshold as a fraction of max D_ggd")
      ->capture_default_str();
  propagate->add_option("--delta2", prop.delta2,
                        "δ₂: geodesic background threshold as a fraction of max D_ggd")
      ->capture_default_str();
  propagate->add_option("--gamma", prop.gamma,
                        "γ: Euclidean background threshold as a fraction of max D_eud")
      ->capture_default_str();
  propagate->add_option("--connectivity", prop.connectivity, "Voxel neighborhood (6 or 26)")
      ->check(CLI::IsMember({6, 26}))
      ->capture_default_str();
  propagate->add_option("--spatial-weight", prop.spatial_weight,
                        "Weight of the millimeter step length in the geodesic edge cost")
      ->capture_default_str();
  propagate->add_option("--units", prop.units, "Units of D_eud")
      ->check(CLI::IsMember({"mm", "voxels"}))
      ->capture_default_str();
  propagate->add_option("--iggd-c", prop.iggd_c, "c: offset in D_iggd = 1 / (D_ggd + c)")
      ->capture_default_str();
  propagate->add_flag("--write-eud", prop.write_eud, "Also write the Euclidean distance map");

  cli::SkeletonizeOptions skel;
  CLI::App* skeletonize =
      app.add_subcommand("skeletonize", "Binary mask -> topology-preserving skeleton");
  add_common(skeletonize, common, true);
  skeletonize->add_option("--mask", skel.mask, "Input binary mask (nonzero = foreground)")
      ->required();
  skeletonize->add_flag("--graph", skel.graph, "Also write the skeleton graph edge list");

  cli::MetricsOptions met;
  CLI::App* metrics = app.add_subcommand(
      "metrics", "Prediction vs reference: DSC, TPR, FPR, BD, BD*, TD (largest component)");
  add_common(metrics, common, false);
  metrics->add_option("--pred", met.pred, "Predicted mask")->required();
  metrics->add_option("--ref", met.ref, "Reference mask")->required();
  metrics->add_option("--ref-skeleton", met.ref_skeleton,
                      "Reference skeleton; derived from --ref by thinning when omitted");
  metrics->add_flag("--proposal", met.proposal,
                    "Treat --pred as a mask proposal and evaluate its foreground (code 1)");
  metrics->add_option("--units", met.units, "Tree length units")
      ->check(CLI::IsMember({"mm", "voxels"}))
      ->capture_default_str();
  metrics->add_option("--bd-fraction", met.bd_fraction,
                      "Covered fraction at which a branch counts as detected (f >= value)")
      ->capture_default_str();
  metrics->add_option("--json", met.json, "Also write the report as JSON to this file");

  cli::LossesOptions los;
  CLI::App* losses = app.add_subcommand(
      "losses", "Evaluate L_total = L_pce + λ₁·L_em + λ₂·L_iggd for given predictions");
  add_common(losses, common, false);
  losses->add_option("--pred", los.pred, "Segmentation prediction in [0, 1]")->required();
  losses->add_option("--pred-map", los.pred_map, "Regression prediction in [0, 1]")->required();
  losses->add_option("--proposal", los.proposal, "Mask proposal (0 bg, 1 fg, 2 unknown)")
      ->required();
  losses->add_option("--target", los.target, "D_iggd regression target")->required();
  losses->add_option("--lambda1", los.lambda1, "λ₁: entropy minimization weight")
      ->capture_default_str();
  losses->add_option("--lambda2", los.lambda2, "λ₂: D_iggd regression weight")
      ->capture_default_str();
  losses->add_option("--em-mode", los.em_mode,
                     "L_em form: binary -(p ln p + (1-p) ln(1-p)) or literal -p ln p")
      ->check(CLI::IsMember({"binary", "literal"}))
      ->capture_default_str();
  losses->add_option("--json", los.json, "Also write the report as JSON to this file");

  cli::PhantomOptions ph;
  CLI::App* phantom =
      app.add_subcommand("phantom", "Synthetic branching-tube volume with ground truth");
  add_common(phantom, common, true);
  phantom->add_option("--dims", ph.dims, "Grid size x y z")->expected(3)->capture_default_str();
  phantom->add_option("--spacing", ph.spacing, "Voxel spacing x y z in mm")
      ->expected(3)
      ->capture_default_str();
  phantom->add_option("--depth", ph.depth, "Generations below the root tube")
      ->capture_default_str();
  phantom->add_option("--root-radius", ph.root_radius, "Root tube radius in voxels")
      ->capture_default_str();
  phantom->add_option("--radius-decay", ph.radius_decay, "Radius factor per generation")
      ->capture_default_str();
  phantom->add_option("--length-min", ph.length_min, "Minimum segment length in voxels")
      ->capture_default_str();
  phantom->add_option("--length-max", ph.length_max, "Maximum segment length in voxels")
      ->capture_default_str();
  phantom->add_option("--angle-min", ph.angle_min, "Minimum branching angle in degrees")
      ->capture_default_str();
  phantom->add_option("--angle-max", ph.angle_max, "Maximum branching angle in degrees")
      ->capture_default_str();
  phantom->add_option("--foreground", ph.foreground, "Tube intensity")->capture_default_str();
  phantom->add_option("--background", ph.background, "Background intensity")
      ->capture_default_str();
  phantom->add_option("--blur", ph.blur, "Gaussian blur σ in voxels (0 = none)")
      ->capture_default_str();
  phantom->add_option("--noise", ph.noise, "Additive Gaussian noise σ (0 = none)")
      ->capture_default_str();
  phantom->add_option("--seed", ph.seed, "Random seed")->capture_default_str();

  cli::ConvertOptions conv;
  CLI::App* convert = app.add_subcommand(
      "convert", "Convert between raw-rvol and NIfTI-1 (format from the output extension)");
  add_common(convert, common, false);
  convert->add_option("--in", conv.input, "Input volume")->required();
  convert->add_option("--out", conv.output, "Output volume (.nii or .rvol)")->required();
  convert->add_option("--dtype", conv.dtype, "Stored voxel type")
      ->check(CLI::IsMember({"f32", "u8"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) {
      CLI::App* failing = &app;
      for (CLI::App* sub : app.get_subcommands()) failing = sub;
      std::cerr << failing->help();
    }
    return kExitUsage;
  }

  try {
    if (*propagate) return cli::run_propagate(common, prop);
    if (*skeletonize) return cli::run_skeletonize(common, skel);
    if (*metrics) return cli::run_metrics(common, met);
    if (*losses) return cli::run_losses(common, los);
    if (*phantom) return cli::run_phantom(common, ph);
    if (*convert) return cli::run_convert(common, conv);
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
