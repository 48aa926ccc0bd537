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

#ifndef SMOOTHSEL_NOISE_H_
#define SMOOTHSEL_NOISE_H_

#include <memory>
#include <optional>
#include <string>

#include "smoothsel/rng.h"

namespace smoothsel {

enum class Sidedness { kTwoSided, kOneSided };

std::string ToString(Sidedness sidedness);

struct AdmissibleParams {
  double alpha;
  double beta;
};

namespace internal {
class QuantileTable;
}  // namespace internal

// The heavy-tailed family h(z) = C / (1 + |z|^gamma), gamma > 1, and its
// restriction g(z) = 2 h(z) on z >= 0.
//
// Sampling is inverse-transform: a 4096-knot table of exact quantiles of |Z|
// with monotone cubic interpolation, built once per spec and shared between
// copies. Copies are cheap and immutable.
class NoiseSpec {
 public:
  static constexpr int kDefaultKnots = 4096;

  // Throws ParameterError unless gamma > 1 and finite.
  static NoiseSpec Create(double gamma, Sidedness sidedness,
                          int knots = kDefaultKnots);

  double gamma() const { return gamma_; }
  Sidedness sidedness() const { return sidedness_; }

  // Same distribution family and sampler table, other sidedness.
  NoiseSpec WithSidedness(Sidedness sidedness) const;

  // C = gamma sin(pi / gamma) / (2 pi).
  double normalization() const { return normalization_; }

  double Density(double z) const;
  double Cdf(double z) const;
  // Exact inverse of Cdf via the regularized incomplete beta function.
  // Slow; intended for tests and table construction.
  double Quantile(double p) const;

  // (alpha, beta) pair for which the two-sided density is admissible at
  // privacy level epsilon:
  //   alpha = eps / (2 (gamma-1)^((gamma-1)/gamma)),  beta = eps / (2 (gamma-1)).
  // Throws ParameterError unless epsilon > 0.
  AdmissibleParams Admissible(double epsilon) const;
  double Alpha(double epsilon) const { return Admissible(epsilon).alpha; }
  double Beta(double epsilon) const { return Admissible(epsilon).beta; }

  double Sample(RngStream& rng) const;

  // Interpolated quantile of |Z| at exponential level s = -ln(1 - v).
  // Exposed for accuracy tests.
  double AbsQuantileAtLevel(double s) const;
  // The same quantile without interpolation. Slow.
  double ExactAbsQuantileAtLevel(double s) const;

 private:
  NoiseSpec(double gamma, Sidedness sidedness,
            std::shared_ptr<const internal::QuantileTable> table);

  double gamma_;
  Sidedness sidedness_;
  double normalization_;
  std::shared_ptr<const internal::QuantileTable> table_;
};

// The (alpha, beta) pair of earlier work, eps / (2 (gamma + 1)) for both.
AdmissibleParams LegacyAdmissibleParams(double gamma, double epsilon);

// Grid for the pointwise admissibility check.
struct AdmissibilityGrid {
  double z_max = 1e3;
  double z_min = 1e-3;
  // Log-spaced magnitudes in [z_min, z_max], used with both signs plus z = 0.
  int z_points = 1000;
  // Evenly spaced shifts in [-alpha, alpha] and dilations in [-beta, beta].
  int shift_points = 41;
  double slack = 1e-9;
};

enum class AdmissibilityProperty { kSliding, kDilation };

struct AdmissibilityWitness {
  AdmissibilityProperty property;
  double z;
  // Delta for sliding, lambda for dilation.
  double shift;
  double log_ratio;
};

struct AdmissibilityReport {
  bool passed = true;
  double bound = 0.0;  // epsilon / 2
  double max_sliding_log_ratio = 0.0;
  double max_dilation_log_ratio = 0.0;
  std::optional<AdmissibilityWitness> witness;  // worst violation, if any
};

// Checks, at every grid point, the pointwise density ratios
//   ln h(z) / h(z + Delta)             <= eps / 2   for |Delta|  <= alpha,
//   ln h(z) / (e^lambda h(e^lambda z)) <= eps / 2   for |lambda| <= beta.
// Pointwise domination implies the set-based sliding and dilation inequalities.
// The check always uses the two-sided density of `spec`.
AdmissibilityReport VerifyAdmissibility(const NoiseSpec& spec, double epsilon,
                                        AdmissibleParams params,
                                        const AdmissibilityGrid& grid = {});
AdmissibilityReport VerifyAdmissibility(const NoiseSpec& spec, double epsilon,
                                        const AdmissibilityGrid& grid = {});

// Gumbel with density (1/scale) exp(-z/scale - exp(-z/scale)).
// Throws ParameterError unless scale > 0.
double SampleGumbel(double scale, RngStream& rng);

// Exponential with density rate * exp(-rate z), z >= 0.
// Throws ParameterError unless rate > 0.
double SampleExponential(double rate, RngStream& rng);

}  // namespace smoothsel

#endif  // SMOOTHSEL_NOISE_H_
