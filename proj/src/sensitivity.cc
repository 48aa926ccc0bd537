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

#include "smoothsel/sensitivity.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "smoothsel/errors.h"

namespace smoothsel {
namespace {

void CheckPoint(const FiniteDomain& domain, PointId x) {
  if (x >= domain.NumPoints()) {
    throw DomainError("point " + std::to_string(x) + " is not in a domain of " +
                      std::to_string(domain.NumPoints()) + " points");
  }
}

// Multi-source breadth-first search over the neighbor graph.
std::vector<int> DistancesFrom(const FiniteDomain& domain,
                               const std::vector<char>& is_source) {
  std::vector<int> dist(domain.NumPoints(), -1);
  std::deque<PointId> queue;
  for (PointId x = 0; x < dist.size(); ++x) {
    if (is_source[x]) {
      dist[x] = 0;
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    const PointId x = queue.front();
    queue.pop_front();
    for (PointId y : domain.Neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  if (std::find(dist.begin(), dist.end(), -1) != dist.end()) {
    throw DomainError("neighbor graph is disconnected");
  }
  return dist;
}

BetaCeiling MinLogRatio(double gs, const std::vector<double>& local,
                        const std::vector<int>& dist) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < local.size(); ++x) {
    // dist == 0 marks the target set itself; LS == 0 never binds.
    if (dist[x] == 0 || local[x] <= 0.0) continue;
    best = std::min(best, std::log(gs / local[x]) / dist[x]);
  }
  if (std::isinf(best)) return BetaCeiling::Unbounded();
  return BetaCeiling::AtMost(best);
}

void CheckBeta(const BetaCeiling& ceiling, double beta, const char* what) {
  if (!(beta > 0.0)) {
    throw PreconditionError(std::string(what) + ": beta must be positive");
  }
  if (!ceiling.Admits(beta)) {
    throw PreconditionError(std::string(what) + ": beta " +
                            std::to_string(beta) + " exceeds the ceiling " +
                            std::to_string(ceiling.value()));
  }
}

}  // namespace

GraphDomain::GraphDomain(std::vector<double> values,
                         const std::vector<std::pair<PointId, PointId>>& edges)
    : values_(std::move(values)), adjacency_(values_.size()) {
  const std::size_t n = values_.size();
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n || a == b) {
      throw DomainError("invalid edge in graph domain");
    }
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  distances_.assign(n * n, -1);
  for (PointId s = 0; s < n; ++s) {
    int* row = &distances_[s * n];
    std::deque<PointId> queue{s};
    row[s] = 0;
    while (!queue.empty()) {
      const PointId x = queue.front();
      queue.pop_front();
      for (PointId y : adjacency_[x]) {
        if (row[y] < 0) {
          row[y] = row[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
}

GraphDomain GraphDomain::Path(std::vector<double> values) {
  std::vector<std::pair<PointId, PointId>> edges;
  for (PointId i = 1; i < values.size(); ++i) edges.emplace_back(i - 1, i);
  return GraphDomain(std::move(values), edges);
}

std::vector<PointId> GraphDomain::Neighbors(PointId x) const {
  CheckPoint(*this, x);
  return adjacency_[x];
}

int GraphDomain::Distance(PointId x, PointId y) const {
  CheckPoint(*this, x);
  CheckPoint(*this, y);
  const int d = distances_[x * values_.size() + y];
  return d < 0 ? std::numeric_limits<int>::max() : d;
}

double GraphDomain::Value(PointId x) const {
  CheckPoint(*this, x);
  return values_[x];
}

double BetaCeiling::value() const {
  if (!value_) throw PreconditionError("beta ceiling is unbounded");
  return *value_;
}

bool BetaCeiling::Admits(double beta) const {
  return !value_ || beta <= *value_ * (1.0 + 1e-12);
}

double LocalSensitivity(const FiniteDomain& domain, PointId x) {
  CheckPoint(domain, x);
  const double fx = domain.Value(x);
  double ls = 0.0;
  for (PointId y : domain.Neighbors(x)) {
    ls = std::max(ls, std::abs(fx - domain.Value(y)));
  }
  return ls;
}

double GlobalSensitivity(const FiniteDomain& domain) {
  if (domain.NumPoints() == 0) throw DomainError("empty domain");
  double gs = 0.0;
  for (PointId x = 0; x < domain.NumPoints(); ++x) {
    gs = std::max(gs, LocalSensitivity(domain, x));
  }
  return gs;
}

SensitivityProfile SensitivityProfile::Build(
    const FiniteDomain& domain, std::optional<double> threshold,
    const std::function<bool(PointId)>& known_high) {
  const std::size_t n = domain.NumPoints();
  if (n == 0) throw DomainError("empty domain");

  SensitivityProfile p;
  p.local_.resize(n);
  for (PointId x = 0; x < n; ++x) p.local_[x] = LocalSensitivity(domain, x);
  p.global_sensitivity_ = *std::max_element(p.local_.begin(), p.local_.end());

  const double gs = p.global_sensitivity_;
  std::vector<char> peak(n);
  for (PointId x = 0; x < n; ++x) {
    peak[x] = p.local_[x] >= gs * (1.0 - kPeakTolerance);
  }
  p.distance_to_peak_ = DistancesFrom(domain, peak);

  if (threshold) {
    if (!(*threshold < gs)) {
      throw ConfigurationError("threshold " + std::to_string(*threshold) +
                               " must be below the global sensitivity " +
                               std::to_string(gs) + "; lower T");
    }
    p.threshold_ = threshold;
    std::vector<char> high(n);
    for (PointId x = 0; x < n; ++x) {
      high[x] = (known_high && known_high(x)) || p.local_[x] > *threshold;
    }
    p.distance_to_high_ = DistancesFrom(domain, high);
  }
  p.ComputeCeilings();
  return p;
}

SensitivityProfile SensitivityProfile::FromParts(
    double global_sensitivity, std::vector<double> local,
    std::vector<int> distance_to_peak, std::optional<double> threshold,
    std::vector<int> distance_to_high) {
  if (local.empty()) throw DomainError("empty profile");
  if (distance_to_peak.size() != local.size() ||
      (threshold && distance_to_high.size() != local.size())) {
    throw DomainError("profile parts have mismatched sizes");
  }
  for (std::size_t x = 0; x < local.size(); ++x) {
    if (local[x] < 0.0 || local[x] > global_sensitivity * (1 + kPeakTolerance)) {
      throw DomainError("local sensitivity outside [0, GS]");
    }
  }
  if (threshold && !(*threshold < global_sensitivity)) {
    throw ConfigurationError("threshold must be below the global sensitivity");
  }
  SensitivityProfile p;
  p.global_sensitivity_ = global_sensitivity;
  p.local_ = std::move(local);
  p.distance_to_peak_ = std::move(distance_to_peak);
  p.threshold_ = threshold;
  if (threshold) p.distance_to_high_ = std::move(distance_to_high);
  p.ComputeCeilings();
  return p;
}

void SensitivityProfile::ComputeCeilings() {
  exact_ceiling_ = MinLogRatio(global_sensitivity_, local_, distance_to_peak_);
  if (threshold_) {
    if (std::find(distance_to_high_.begin(), distance_to_high_.end(), 0) ==
        distance_to_high_.end()) {
      throw ConfigurationError("high-sensitivity set is empty; lower T");
    }
    threshold_ceiling_ =
        MinLogRatio(global_sensitivity_, local_, distance_to_high_);
  }
}

double SensitivityProfile::threshold() const {
  if (!threshold_) throw ConfigurationError("profile has no threshold");
  return *threshold_;
}

int SensitivityProfile::distance_to_high(PointId x) const {
  if (!threshold_) throw ConfigurationError("profile has no threshold");
  return distance_to_high_.at(x);
}

BetaCeiling SensitivityProfile::threshold_beta_ceiling() const {
  if (!threshold_ceiling_) throw ConfigurationError("profile has no threshold");
  return *threshold_ceiling_;
}

SmoothSensitivityOracle::SmoothSensitivityOracle(const FiniteDomain& domain,
                                                 std::size_t point_cap)
    : domain_(domain) {
  if (domain.NumPoints() > point_cap) {
    throw SizeError("domain has " + std::to_string(domain.NumPoints()) +
                    " points, above the enumeration cap of " +
                    std::to_string(point_cap));
  }
  local_.resize(domain.NumPoints());
  for (PointId y = 0; y < local_.size(); ++y) {
    local_[y] = LocalSensitivity(domain, y);
  }
}

double SmoothSensitivityOracle::operator()(PointId x, double beta) const {
  CheckPoint(domain_, x);
  if (!(beta > 0.0)) throw ParameterError("beta must be positive");
  double best = 0.0;
  for (PointId y = 0; y < local_.size(); ++y) {
    if (local_[y] <= best) continue;
    best = std::max(best, local_[y] * std::exp(-beta * domain_.Distance(y, x)));
  }
  return best;
}

BetaCeiling ExactBetaCeiling(const SensitivityProfile& profile) {
  return profile.exact_beta_ceiling();
}

double ExactSmoothSensitivity(const SensitivityProfile& profile, PointId x,
                              double beta) {
  CheckBeta(profile.exact_beta_ceiling(), beta, "exact smooth sensitivity");
  return profile.global_sensitivity() *
         std::exp(-beta * profile.distance_to_peak(x));
}

BetaCeiling ThresholdBetaCeiling(const SensitivityProfile& profile) {
  return profile.threshold_beta_ceiling();
}

double ThresholdSmoothBound(const SensitivityProfile& profile, PointId x,
                            double beta) {
  CheckBeta(profile.threshold_beta_ceiling(), beta, "threshold smooth bound");
  return profile.global_sensitivity() *
         std::exp(-beta * profile.distance_to_high(x));
}

}  // namespace smoothsel
