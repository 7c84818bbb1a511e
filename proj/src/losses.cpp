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

#include "skelprop/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skelprop/diagnostics.hpp"

namespace skelprop {

namespace {

double clamp_prob(double p) { return std::clamp(p, kLogClamp, 1.0 - kLogClamp); }

bool in_clamp_region(double p) { return p <= kLogClamp || p >= 1.0 - kLogClamp; }

double entropy_term(double p, EntropyMode mode) {
  const double q = clamp_prob(p);
  if (mode == EntropyMode::Literal) return -q * std::log(q);
  return -(q * std::log(q) + (1.0 - q) * std::log(1.0 - q));
}

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(name) + " is not finite");
}

}  // namespace

void LossWeights::validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !std::isfinite(lambda1) ||
      !std::isfinite(lambda2)) {
    throw InvalidArgument("loss weights must be nonnegative and finite");
  }
}

EntropyMode parse_entropy_mode(std::string_view name) {
  if (name == "binary") return EntropyMode::Binary;
  if (name == "literal") return EntropyMode::Literal;
  throw InvalidArgument("entropy mode must be 'binary' or 'literal', got '" +
                        std::string(name) + "'");
}

const char* to_string(EntropyMode m) noexcept {
  return m == EntropyMode::Binary ? "binary" : "literal";
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double partial_cross_entropy(const PredictionVolume& pred, const MaskProposal& proposal) {
  require_same_geometry(pred.geometry(), proposal.geometry(), "partial cross-entropy");
  std::vector<double> terms;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const Label l = proposal[i];
    if (l == Label::Unknown) continue;
    const double q = clamp_prob(pred[i]);
    terms.push_back(l == Label::Foreground ? -std::log(q) : -std::log(1.0 - q));
  }
  if (terms.empty()) {
    warn("partial cross-entropy: labeled set is empty, loss is 0");
    return 0.0;
  }
  return pairwise_sum(terms) / static_cast<double>(terms.size());
}

double entropy_minimization(const PredictionVolume& pred, const MaskProposal& proposal,
                            EntropyMode mode) {
  require_same_geometry(pred.geometry(), proposal.geometry(), "entropy minimization");
  std::vector<double> terms;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (proposal[i] == Label::Unknown) terms.push_back(entropy_term(pred[i], mode));
  }
  if (terms.empty()) {
    warn("entropy minimization: unknown set is empty, loss is 0");
    return 0.0;
  }
  return pairwise_sum(terms) / static_cast<double>(terms.size());
}

double iggd_mse(const PredictionVolume& pred_map, const DistanceMap& target) {
  require_same_geometry(pred_map.geometry(), target.geometry(), "iggd mse");
  if (target.kind() != DistanceKind::InverseGeodesic) {
    throw InvalidArgument(std::string("iggd mse target must be inverse-geodesic, got ") +
                          to_string(target.kind()));
  }
  std::vector<double> terms(pred_map.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double e = pred_map[i] - target[i];
    terms[i] = e * e;
  }
  return pairwise_sum(terms) / static_cast<double>(terms.size());
}

LossReport total_loss(double pce, double em, double mse, const LossWeights& w) {
  check_finite(pce, "pce");
  check_finite(em, "em");
  check_finite(mse, "iggd mse");
  w.validate();
  LossReport r;
  r.pce = pce;
  r.em = em;
  r.iggd_mse = mse;
  r.total = pce + w.lambda1 * em + w.lambda2 * mse;
  return r;
}

LossReport evaluate_losses(const PredictionVolume& pred, const PredictionVolume& pred_map,
                           const MaskProposal& proposal, const DistanceMap& target,
                           const LossWeights& w, EntropyMode mode) {
  LossReport r = total_loss(partial_cross_entropy(pred, proposal),
                            entropy_minimization(pred, proposal, mode),
                            iggd_mse(pred_map, target), w);
  const ProposalCounts c = count_labels(proposal);
  r.labeled = c.labeled();
  r.unlabeled = c.unknown;
  r.voxels = proposal.size();
  return r;
}

std::vector<double> partial_cross_entropy_gradient(const PredictionVolume& pred,
                                                   const MaskProposal& proposal) {
  require_same_geometry(pred.geometry(), proposal.geometry(), "partial cross-entropy");
  const ProposalCounts c = count_labels(proposal);
  std::vector<double> g(pred.size(), 0.0);
  if (c.labeled() == 0) return g;
  const double scale = 1.0 / static_cast<double>(c.labeled());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = pred[i];
    if (proposal[i] == Label::Unknown || in_clamp_region(p)) continue;
    g[i] = proposal[i] == Label::Foreground ? -scale / p : scale / (1.0 - p);
  }
  return g;
}

std::vector<double> entropy_minimization_gradient(const PredictionVolume& pred,
                                                  const MaskProposal& proposal,
                                                  EntropyMode mode) {
  require_same_geometry(pred.geometry(), proposal.geometry(), "entropy minimization");
  const ProposalCounts c = count_labels(proposal);
  std::vector<double> g(pred.size(), 0.0);
  if (c.unknown == 0) return g;
  const double scale = 1.0 / static_cast<double>(c.unknown);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = pred[i];
    if (proposal[i] != Label::Unknown || in_clamp_region(p)) continue;
    g[i] = mode == EntropyMode::Literal ? -scale * (std::log(p) + 1.0)
                                        : -scale * std::log(p / (1.0 - p));
  }
  return g;
}

std::vector<double> iggd_mse_gradient(const PredictionVolume& pred_map,
                                      const DistanceMap& target) {
  require_same_geometry(pred_map.geometry(), target.geometry(), "iggd mse");
  const double scale = 2.0 / static_cast<double>(pred_map.size());
  std::vector<double> g(pred_map.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = scale * (pred_map[i] - target[i]);
  return g;
}

}  // namespace skelprop
