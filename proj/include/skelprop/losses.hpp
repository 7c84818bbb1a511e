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
 * Loss evaluators over a prediction, a tri-state proposal and an inverse
 * geodesic target. Nothing here trains anything; these are the values a
 * training loop would minimize.
 *
 * Logarithm arguments are clamped to [kLogClamp, 1 - kLogClamp]. Sums
 * use a fixed pairwise reduction so results do not depend on threading.
 */

#ifndef SKELPROP_LOSSES_HPP
#define SKELPROP_LOSSES_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "skelprop/volume.hpp"

namespace skelprop {

inline constexpr double kLogClamp = 1e-7;

struct LossWeights {
  double lambda1 = 1.5;
  double lambda2 = 20.0;

  void validate() const;
};

enum class EntropyMode {
  Binary,   // -(p log p + (1 - p) log(1 - p))
  Literal,  // -p log p
};

EntropyMode parse_entropy_mode(std::string_view name);
const char* to_string(EntropyMode m) noexcept;

struct LossReport {
  double pce = 0.0;
  double em = 0.0;
  double iggd_mse = 0.0;
  double total = 0.0;
  std::size_t labeled = 0;
  std::size_t unlabeled = 0;
  std::size_t voxels = 0;
};

double pairwise_sum(std::span<const double> values);

// Cross-entropy over the labeled set (target 1 on foreground, 0 on
// background). Returns 0 with a warning when nothing is labeled.
double partial_cross_entropy(const PredictionVolume& pred, const MaskProposal& proposal);

// Entropy of the prediction averaged over the unknown set. Returns 0 with
// a warning when nothing is unknown.
double entropy_minimization(const PredictionVolume& pred, const MaskProposal& proposal,
                            EntropyMode mode = EntropyMode::Binary);

double iggd_mse(const PredictionVolume& pred_map, const DistanceMap& target);

LossReport total_loss(double pce, double em, double mse, const LossWeights& w = {});

LossReport evaluate_losses(const PredictionVolume& pred, const PredictionVolume& pred_map,
                           const MaskProposal& proposal, const DistanceMap& target,
                           const LossWeights& w = {}, EntropyMode mode = EntropyMode::Binary);

// Analytic derivative of each loss with respect to every prediction
// voxel. Zero inside the clamp region and outside the loss's domain.
std::vector<double> partial_cross_entropy_gradient(const PredictionVolume& pred,
                                                   const MaskProposal& proposal);
std::vector<double> entropy_minimization_gradient(const PredictionVolume& pred,
                                                  const MaskProposal& proposal,
                                                  EntropyMode mode = EntropyMode::Binary);
std::vector<double> iggd_mse_gradient(const PredictionVolume& pred_map,
                                      const DistanceMap& target);

}  // namespace skelprop

#endif  // SKELPROP_LOSSES_HPP
