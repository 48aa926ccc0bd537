//
// Copyright 2026 The smoothsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "smoothsel/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mechanisms_internal.h"
#include "smoothsel/errors.h"

namespace smoothsel {
namespace {

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be finite and positive");
  }
}

}  // namespace

ScoreTable::ScoreTable(std::vector<double> scores, double global_sensitivity,
                       std::optional<SmoothBound> smooth_bound,
                       std::vector<std::string> labels)
    : scores_(std::move(scores)),
      global_sensitivity_(global_sensitivity),
      smooth_bound_(smooth_bound),
      labels_(std::move(labels)) {
  if (scores_.empty()) throw ParameterError("empty candidate set");
  if (!(global_sensitivity_ > 0.0)) {
    throw ParameterError("score global sensitivity must be positive");
  }
  if (!labels_.empty() && labels_.size() != scores_.size()) {
    throw ParameterError("one label per candidate required");
  }
  if (smooth_bound_) {
    if (!(smooth_bound_->max_value > 0.0) ||
        smooth_bound_->max_value > global_sensitivity_ * (1.0 + 1e-12)) {
      throw ParameterError("smooth bound must lie in (0, GS]");
    }
    if (!(smooth_bound_->beta > 0.0)) {
      throw ParameterError("smooth bound beta must be positive");
    }
  }
}

std::string ScoreTable::label(std::size_t r) const {
  if (r >= scores_.size()) throw DomainError("candidate index out of range");
  return labels_.empty() ? std::to_string(r) : labels_[r];
}

double BudgetSplit::SmoothingCoefficient(std::size_t m, Sidedness sidedness) {
  const double mm = static_cast<double>(m);
  return sidedness == Sidedness::kTwoSided ? mm / 2.0 : (mm - 1.0) / 2.0;
}

double BudgetSplit::PrivacyLoss(std::size_t m) const {
  return (k + SmoothingCoefficient(m, sidedness) * l) * epsilon;
}

void BudgetSplit::Validate(std::size_t m) const {
  if (!(epsilon > 0.0)) throw BudgetError("epsilon must be positive");
  if (!(k > 0.0)) throw BudgetError("k must be positive");
  if (!(l > 0.0)) throw BudgetError("l must be positive");
  const double total = k + SmoothingCoefficient(m, sidedness) * l;
  if (total > 1.0 + 1e-12) {
    const char* constraint = sidedness == Sidedness::kTwoSided
                                 ? "k + m/2 * l <= 1"
                                 : "k + (m-1)/2 * l <= 1";
    throw BudgetError(std::string("budget violates ") + constraint + " (m = " +
                      std::to_string(m) + ", value " + std::to_string(total) +
                      ")");
  }
}

BudgetSplit ChooseBudget(std::size_t m, Sidedness sidedness, double gamma,
                         double epsilon, const BetaCeiling& beta_ceiling,
                         double k_min) {
  if (m == 0) throw ParameterError("empty candidate set");
  CheckEpsilon(epsilon);
  if (!(gamma > 1.0)) throw ParameterError("gamma must exceed 1");
  if (!(k_min > 0.0 && k_min < 1.0)) {
    throw ParameterError("k_min must lie in (0, 1)");
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double coefficient = BudgetSplit::SmoothingCoefficient(m, sidedness);
  const double l_sat = beta_ceiling.bounded()
                           ? 2.0 * (gamma - 1.0) * beta_ceiling.value() / epsilon
                           : inf;
  const double l_cap = coefficient > 0.0 ? (1.0 - k_min) / coefficient : inf;
  double l = std::min(l_sat, l_cap);
  // Only reachable for one-sided m = 1, where l carries no privacy cost.
  if (std::isinf(l)) l = 1.0;

  BudgetSplit split{epsilon, 1.0 - coefficient * l, l, sidedness};
  if (!(split.k > 0.0)) throw BudgetError("budget policy leaves k <= 0");
  if (!(split.l > 0.0)) throw BudgetError("beta ceiling leaves l <= 0");
  return split;
}

std::size_t ExponentialMechanism(const ScoreTable& table, double epsilon,
                                 RngStream& rng) {
  CheckEpsilon(epsilon);
  const double scale = 2.0 * table.global_sensitivity() / epsilon;
  return internal::NoisyArgmax(
      table.scores(), [&](std::size_t) { return SampleGumbel(scale, rng); });
}

std::size_t PermuteAndFlip(const ScoreTable& table, double epsilon,
                           RngStream& rng) {
  CheckEpsilon(epsilon);
  const auto& scores = table.scores();
  const double best = *std::max_element(scores.begin(), scores.end());
  const double factor = epsilon / (2.0 * table.global_sensitivity());

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Lazy Fisher-Yates: only the visited prefix of the permutation is drawn.
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::swap(order[i], order[i + rng.Below(order.size() - i)]);
    const std::size_t r = order[i];
    const double p = std::exp(factor * (scores[r] - best));
    if (rng.Uniform() < p) return r;
  }
  // p = 1 for the top candidate, so the loop always returns.
  return order.back();
}

std::size_t PermuteAndFlipNoiseForm(const ScoreTable& table, double epsilon,
                                    RngStream& rng) {
  CheckEpsilon(epsilon);
  const double rate = epsilon / (2.0 * table.global_sensitivity());
  return internal::NoisyArgmax(
      table.scores(), [&](std::size_t) { return SampleExponential(rate, rng); });
}

std::size_t SmoothPrivateSelection(const ScoreTable& table,
                                   const BudgetSplit& budget,
                                   const NoiseSpec& noise, RngStream& rng) {
  budget.Validate(table.size());
  if (budget.sidedness != noise.sidedness()) {
    throw ParameterError("budget is " + ToString(budget.sidedness) +
                         " but noise is " + ToString(noise.sidedness()));
  }
  const auto& bound = table.smooth_bound();
  if (!bound) throw PreconditionError("score table has no smooth bound");
  const double beta_prime = noise.Beta(budget.l * budget.epsilon);
  if (bound->beta > beta_prime * (1.0 + 1e-12)) {
    throw PreconditionError("smooth bound built for beta " +
                            std::to_string(bound->beta) +
                            " but the budget only supports beta' " +
                            std::to_string(beta_prime));
  }
  const double scale =
      bound->max_value / noise.Alpha(budget.k * budget.epsilon);
  return internal::NoisyArgmax(table.scores(), [&](std::size_t) {
    return scale * noise.Sample(rng);
  });
}

double NumericMechanismBeta(const NoiseSpec& noise, double k, double epsilon) {
  if (!(k > 0.0 && k < 2.0)) throw ParameterError("k must lie in (0, 2)");
  CheckEpsilon(epsilon);
  return noise.Beta((2.0 - k) * epsilon);
}

double SmoothNumericMechanism(double value, double smooth_bound, double k,
                              double epsilon, const NoiseSpec& noise,
                              RngStream& rng) {
  if (!(k > 0.0 && k < 2.0)) throw ParameterError("k must lie in (0, 2)");
  CheckEpsilon(epsilon);
  if (noise.sidedness() != Sidedness::kTwoSided) {
    throw ParameterError("the numeric mechanism needs two-sided noise");
  }
  if (!(smooth_bound > 0.0)) {
    throw ParameterError("smooth bound must be positive");
  }
  return value + smooth_bound / noise.Alpha(k * epsilon) * noise.Sample(rng);
}

bool ExpectedNoiseAdvantage(double smooth_bound_max, double k, double gs_u) {
  if (!(smooth_bound_max > 0.0 && k > 0.0 && gs_u > 0.0)) {
    throw ParameterError("expected-noise comparison needs positive inputs");
  }
  return smooth_bound_max < std::pow(4.0 / 27.0, 0.25) * k * gs_u;
}

}  // namespace smoothsel
