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

#ifndef SMOOTHSEL_MECHANISMS_H_
#define SMOOTHSEL_MECHANISMS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "smoothsel/noise.h"
#include "smoothsel/rng.h"
#include "smoothsel/sensitivity.h"

namespace smoothsel {

// max_r S(x, r) together with the smoothing parameter it was built for.
struct SmoothBound {
  double max_value;
  double beta;
};

// Candidates R with their scores u(x, r). Mechanisms return the index of
// the selected candidate.
class ScoreTable {
 public:
  // Throws ParameterError when `scores` is empty, the global sensitivity is
  // not positive, labels do not match the scores, or the smooth bound is not
  // in (0, global_sensitivity].
  ScoreTable(std::vector<double> scores, double global_sensitivity,
             std::optional<SmoothBound> smooth_bound = std::nullopt,
             std::vector<std::string> labels = {});

  std::size_t size() const { return scores_.size(); }
  const std::vector<double>& scores() const { return scores_; }
  double score(std::size_t r) const { return scores_.at(r); }
  double global_sensitivity() const { return global_sensitivity_; }
  const std::optional<SmoothBound>& smooth_bound() const {
    return smooth_bound_;
  }
  // "0", "1", ... when no labels were given.
  std::string label(std::size_t r) const;

 private:
  std::vector<double> scores_;
  double global_sensitivity_;
  std::optional<SmoothBound> smooth_bound_;
  std::vector<std::string> labels_;
};

// Split of epsilon between the noise scale (k) and the smoothing of the
// sensitivity bound (l). The mechanism is (k + c * l) * epsilon private,
// where c = m / 2 for two-sided noise and (m - 1) / 2 for one-sided noise.
struct BudgetSplit {
  double epsilon;
  double k;
  double l;
  Sidedness sidedness;

  // The coefficient c above.
  static double SmoothingCoefficient(std::size_t m, Sidedness sidedness);

  // (k + c * l) * epsilon.
  double PrivacyLoss(std::size_t m) const;

  // Throws BudgetError naming the binding constraint unless k, l, epsilon
  // are positive and k + c * l <= 1 (with 1e-12 slack).
  void Validate(std::size_t m) const;
};

// Default budget policy. l saturates the beta ceiling,
//   l_sat = 2 (gamma - 1) * ceiling / epsilon,
// capped so that k stays at or above k_min; k takes the remainder so the
// constraint holds with equality.
// Throws ParameterError for invalid inputs and BudgetError if k <= 0.
BudgetSplit ChooseBudget(std::size_t m, Sidedness sidedness, double gamma,
                         double epsilon, const BetaCeiling& beta_ceiling,
                         double k_min = 0.5);

// argmax_r { u(x, r) + Gumbel(2 GS / epsilon) }.
std::size_t ExponentialMechanism(const ScoreTable& table, double epsilon,
                                 RngStream& rng);

// Random permutation with Bernoulli(exp(eps (u_r - u*) / (2 GS))) acceptance;
// the first accepted candidate is returned.
std::size_t PermuteAndFlip(const ScoreTable& table, double epsilon,
                           RngStream& rng);

// argmax_r { u(x, r) + Exponential(rate = epsilon / (2 GS)) }, distributed
// identically to PermuteAndFlip.
std::size_t PermuteAndFlipNoiseForm(const ScoreTable& table, double epsilon,
                                    RngStream& rng);

// argmax_r { u(x, r) + (max_r S(x, r) / alpha') Z_r } with
// alpha' = alpha(k eps) and Z_r drawn from `noise`. Ties go to the first
// candidate.
//
// Requires the table's smooth bound to have been built for a beta no larger
// than beta' = beta(l eps), and `noise` to match the budget's sidedness.
std::size_t SmoothPrivateSelection(const ScoreTable& table,
                                   const BudgetSplit& budget,
                                   const NoiseSpec& noise, RngStream& rng);

// The beta' a smooth bound must support for SmoothNumericMechanism:
// beta((2 - k) epsilon).
double NumericMechanismBeta(const NoiseSpec& noise, double k, double epsilon);

// value + (smooth_bound / alpha(k eps)) Z with two-sided Z, for k in (0, 2).
// The caller supplies a bound that is NumericMechanismBeta-smooth.
double SmoothNumericMechanism(double value, double smooth_bound, double k,
                              double epsilon, const NoiseSpec& noise,
                              RngStream& rng);

// For one-sided gamma = 4 noise: true iff the expected noise of smooth
// private selection is below that of permute-and-flip, i.e.
//   max_r S(x, r) < (4/27)^(1/4) * k * GS.
bool ExpectedNoiseAdvantage(double smooth_bound_max, double k, double gs_u);

}  // namespace smoothsel

#endif  // SMOOTHSEL_MECHANISMS_H_
