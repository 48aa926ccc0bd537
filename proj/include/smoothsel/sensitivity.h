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

#ifndef SMOOTHSEL_SENSITIVITY_H_
#define SMOOTHSEL_SENSITIVITY_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace smoothsel {

using PointId = std::size_t;

// A finite set of datasets with a Hamming-style distance and a real-valued
// query on it. Points are dense ids in [0, NumPoints()). Neighbors(x) must
// return exactly the points at Distance 1 from x.
class FiniteDomain {
 public:
  virtual ~FiniteDomain() = default;

  virtual std::size_t NumPoints() const = 0;
  virtual std::vector<PointId> Neighbors(PointId x) const = 0;
  virtual int Distance(PointId x, PointId y) const = 0;
  virtual double Value(PointId x) const = 0;
};

// Domain given by an explicit undirected neighbor graph. Distance is the
// shortest-path length, precomputed for all pairs, so keep these small.
class GraphDomain final : public FiniteDomain {
 public:
  GraphDomain(std::vector<double> values,
              const std::vector<std::pair<PointId, PointId>>& edges);

  std::size_t NumPoints() const override { return values_.size(); }
  std::vector<PointId> Neighbors(PointId x) const override;
  int Distance(PointId x, PointId y) const override;
  double Value(PointId x) const override;

  // A path 0 - 1 - ... - (n-1) carrying `values`.
  static GraphDomain Path(std::vector<double> values);

 private:
  std::vector<double> values_;
  std::vector<std::vector<PointId>> adjacency_;
  std::vector<int> distances_;  // row-major n x n, -1 when unreachable
};

// Views a selection score u(x, r) at a fixed candidate r as a query on the
// same domain.
class CandidateScoreDomain final : public FiniteDomain {
 public:
  using ScoreFn = std::function<double(PointId, std::size_t)>;

  CandidateScoreDomain(const FiniteDomain& base, ScoreFn score,
                       std::size_t candidate)
      : base_(base), score_(std::move(score)), candidate_(candidate) {}

  std::size_t NumPoints() const override { return base_.NumPoints(); }
  std::vector<PointId> Neighbors(PointId x) const override {
    return base_.Neighbors(x);
  }
  int Distance(PointId x, PointId y) const override {
    return base_.Distance(x, y);
  }
  double Value(PointId x) const override { return score_(x, candidate_); }

 private:
  const FiniteDomain& base_;
  ScoreFn score_;
  std::size_t candidate_;
};

// Upper limit on admissible smoothing parameters. An unbounded ceiling means
// every beta > 0 is admissible; it is kept as an explicit state so that an
// infinity never reaches a noise scale.
class BetaCeiling {
 public:
  static BetaCeiling Unbounded() { return BetaCeiling(std::nullopt); }
  static BetaCeiling AtMost(double value) { return BetaCeiling(value); }

  bool bounded() const { return value_.has_value(); }
  // Throws PreconditionError when unbounded.
  double value() const;

  // beta <= ceiling, with 1e-12 relative slack for values that went through
  // a budget round trip.
  bool Admits(double beta) const;

  friend bool operator==(const BetaCeiling&, const BetaCeiling&) = default;

 private:
  explicit BetaCeiling(std::optional<double> value) : value_(value) {}

  std::optional<double> value_;
};

// Everything the fast smooth-sensitivity forms need, computed once per
// (domain, threshold) pair.
//
// `distance_to_peak[x]` is the graph distance from x to the nearest point
// whose local sensitivity equals the global sensitivity. When a threshold T
// is given, `distance_to_high[x]` is the distance from x to the high set
// U = {y : LS(y) > T}.
class SensitivityProfile {
 public:
  // Relative tolerance for deciding LS(x) == GS in floating point.
  static constexpr double kPeakTolerance = 1e-12;

  // Enumerates the domain. `known_high`, when set, is a sufficient condition
  // for membership in U that lets callers skip the comparison against T;
  // it must only return true for points with LS > T.
  //
  // Throws DomainError for an empty or disconnected domain and
  // ConfigurationError when T >= GS.
  static SensitivityProfile Build(
      const FiniteDomain& domain, std::optional<double> threshold = std::nullopt,
      const std::function<bool(PointId)>& known_high = {});

  // Assembles a profile from precomputed parts (e.g. a cache file).
  // Ceilings are recomputed from the parts.
  static SensitivityProfile FromParts(double global_sensitivity,
                                      std::vector<double> local,
                                      std::vector<int> distance_to_peak,
                                      std::optional<double> threshold,
                                      std::vector<int> distance_to_high);

  std::size_t size() const { return local_.size(); }
  double global_sensitivity() const { return global_sensitivity_; }
  double local(PointId x) const { return local_.at(x); }
  int distance_to_peak(PointId x) const { return distance_to_peak_.at(x); }
  bool has_threshold() const { return threshold_.has_value(); }
  // Throws ConfigurationError when no threshold was given.
  double threshold() const;
  int distance_to_high(PointId x) const;

  const std::vector<double>& local_values() const { return local_; }
  const std::vector<int>& distances_to_peak() const { return distance_to_peak_; }
  const std::vector<int>& distances_to_high() const { return distance_to_high_; }

  BetaCeiling exact_beta_ceiling() const { return exact_ceiling_; }
  // Throws ConfigurationError when no threshold was given.
  BetaCeiling threshold_beta_ceiling() const;

 private:
  SensitivityProfile() = default;
  void ComputeCeilings();

  double global_sensitivity_ = 0.0;
  std::vector<double> local_;
  std::vector<int> distance_to_peak_;
  std::optional<double> threshold_;
  std::vector<int> distance_to_high_;
  BetaCeiling exact_ceiling_ = BetaCeiling::Unbounded();
  std::optional<BetaCeiling> threshold_ceiling_;
};

// max over neighbors y of |f(x) - f(y)|; 0 for an isolated point.
double LocalSensitivity(const FiniteDomain& domain, PointId x);

// max over x of LocalSensitivity(x). Throws DomainError when empty.
double GlobalSensitivity(const FiniteDomain& domain);

// Brute-force beta-smooth sensitivity,
//   S*(x) = max_y LS(y) * exp(-beta * d(y, x)),
// using the domain's own Distance. Local sensitivities are enumerated once at
// construction; each query is O(|domain|).
class SmoothSensitivityOracle {
 public:
  static constexpr std::size_t kDefaultPointCap = 1'000'000;

  // Throws SizeError when the domain has more than `point_cap` points.
  explicit SmoothSensitivityOracle(const FiniteDomain& domain,
                                   std::size_t point_cap = kDefaultPointCap);

  // Throws ParameterError unless beta > 0.
  double operator()(PointId x, double beta) const;

  double local(PointId x) const { return local_.at(x); }

 private:
  const FiniteDomain& domain_;
  std::vector<double> local_;
};

// min over {x : LS(x) != GS, LS(x) > 0} of ln(GS / LS(x)) / gd(x).
// Points with LS = 0 never constrain beta. Unbounded when nothing qualifies.
BetaCeiling ExactBetaCeiling(const SensitivityProfile& profile);

// GS * exp(-beta * gd(x)). Equals the smooth sensitivity whenever
// 0 < beta <= ExactBetaCeiling. Throws PreconditionError otherwise.
double ExactSmoothSensitivity(const SensitivityProfile& profile, PointId x,
                              double beta);

// min over {x not in U, LS(x) > 0} of ln(GS / LS(x)) / ud(x). Unbounded when
// U is the whole domain or every point outside U has LS = 0.
// Throws ConfigurationError when the profile has no threshold or U is empty.
BetaCeiling ThresholdBetaCeiling(const SensitivityProfile& profile);

// GS * exp(-beta * ud(x)), a beta-smooth upper bound on LS whenever
// 0 < beta <= ThresholdBetaCeiling. Throws PreconditionError otherwise.
double ThresholdSmoothBound(const SensitivityProfile& profile, PointId x,
                            double beta);

}  // namespace smoothsel

#endif  // SMOOTHSEL_SENSITIVITY_H_
