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

#ifndef SKELPROP_TOOLS_COMMANDS_HPP
#define SKELPROP_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace skelprop::cli {

// Bad flag values or combinations; reported with exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string out_dir = ".";
  std::string prefix;
  std::string format = "raw-rvol";
  unsigned threads = 1;
  std::string config;
};

struct PropagateOptions {
  std::string image;
  std::string skeleton;
  double sigma = 1.0;
  int radius = 0;
  double delta1 = 0.01;
  double delta2 = 0.07;
  double gamma = 0.05;
  int connectivity = 26;
  double spatial_weight = 0.0;
  std::string units = "mm";
  double iggd_c = 1.0;
  bool write_eud = false;
};

struct SkeletonizeOptions {
  std::string mask;
  bool graph = false;
};

struct MetricsOptions {
  std::string pred;
  std::string ref;
  std::string ref_skeleton;
  bool proposal = false;
  std::string units = "mm";
  double bd_fraction = 0.8;
  std::string json;
};

struct LossesOptions {
  std::string pred;
  std::string pred_map;
  std::string proposal;
  std::string target;
  double lambda1 = 1.5;
  double lambda2 = 20.0;
  std::string em_mode = "binary";
  std::string json;
};

struct PhantomOptions {
  std::vector<std::size_t> dims{64, 64, 64};
  std::vector<double> spacing{1.0, 1.0, 1.0};
  int depth = 3;
  double root_radius = 2.5;
  double radius_decay = 0.75;
  double length_min = 10.0;
  double length_max = 16.0;
  double angle_min = 35.0;
  double angle_max = 55.0;
  double foreground = 1.0;
  double background = 0.0;
  double blur = 1.0;
  double noise = 0.05;
  std::uint64_t seed = 1;
};

struct ConvertOptions {
  std::string input;
  std::string output;
  std::string dtype = "f32";
};

int run_propagate(const CommonOptions& c, const PropagateOptions& o);
int run_skeletonize(const CommonOptions& c, const SkeletonizeOptions& o);
int run_metrics(const CommonOptions& c, const MetricsOptions& o);
int run_losses(const CommonOptions& c, const LossesOptions& o);
int run_phantom(const CommonOptions& c, const PhantomOptions& o);
int run_convert(const CommonOptions& c, const ConvertOptions& o);

}  // namespace skelprop::cli

#endif  // SKELPROP_TOOLS_COMMANDS_HPP
