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

#ifndef SMOOTHSEL_BENCH_H_
#define SMOOTHSEL_BENCH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smoothsel/mechanisms.h"
#include "smoothsel/noise.h"
#include "smoothsel/tdt.h"

namespace smoothsel {

enum class Mechanism { kExponential, kPermuteAndFlip, kSmoothPrivateSelection };

// How Smooth Private Selection obtains its bound and which noise it adds.
// "Exact" uses GS exp(-beta gd(x)); "threshold" uses GS exp(-beta ud(x)).
enum class SpsCase {
  kExactTwoSided,
  kExactOneSided,
  kThresholdTwoSided,
  kThresholdOneSided,
};

// Tokens used on the command line and in CSV output: em, pf, sps.
std::string ToString(Mechanism mechanism);
Mechanism ParseMechanism(const std::string& token);
// thm4_two_sided, thm4_one_sided, thm5_two_sided, thm5_one_sided.
std::string ToString(SpsCase sps_case);
SpsCase ParseSpsCase(const std::string& token);
Sidedness SidednessOf(SpsCase sps_case);
bool UsesThreshold(SpsCase sps_case);

struct ExperimentConfig {
  int n_families = 150;
  std::vector<int> m_values{5, 10, 15, 20};
  std::vector<double> epsilon_values{3, 6, 9, 12, 15, 18, 21};
  double gamma = 4.0;
  std::vector<double> gamma_values{2, 4, 6, 10};
  int trials_per_cell = 40;
  int repetitions = 5;
  std::vector<Mechanism> mechanisms{Mechanism::kExponential,
                                    Mechanism::kPermuteAndFlip,
                                    Mechanism::kSmoothPrivateSelection};
  std::vector<SpsCase> sps_cases{SpsCase::kExactTwoSided, SpsCase::kExactOneSided,
                                 SpsCase::kThresholdTwoSided,
                                 SpsCase::kThresholdOneSided};
  double threshold_t = 6.0;
  uint64_t seed = 1;
  double k_min = 0.5;

  // Throws ConfigurationError for non-positive counts or epsilons.
  void Validate() const;
};

// Reads a flat JSON object whose keys mirror ExperimentConfig (n_families,
// m_values, epsilon_values, gamma, gamma_values, trials_per_cell,
// repetitions, mechanisms, sps_cases, threshold_T, seed, k_min) on top of
// `base`. Throws ConfigurationError on unknown keys or bad values.
ExperimentConfig ReadExperimentConfig(std::istream& in,
                                      ExperimentConfig base = {});

// One simulated dataset: m SNP tables, their chi-square scores and the index
// of the true maximum (first index on ties).
struct GeneratedScores {
  std::vector<TdtTable> tables;
  std::vector<double> scores;
  std::size_t best = 0;
};

// s[r] ~ Binomial(2N, 2/3), b[r] ~ Binomial(s[r], 1/2), c[r] = s[r] - b[r].
GeneratedScores GenerateScores(int n_families, int m, RngStream& rng);

// max_r S(x, r) at smoothing parameter beta for the bound that `sps_case`
// selects.
SmoothBound SmoothBoundFor(const TdtProfile& profile, SpsCase sps_case,
                           std::span<const TdtTable> tables, double beta);

// Everything needed to run one selection mechanism on TDT score tables:
// the budget split is chosen once per (case, m, epsilon).
class TdtSelector {
 public:
  // SPS variants need `sps_case` and `noise`; EM and PF ignore them.
  // Throws BudgetError when the budget policy is infeasible.
  TdtSelector(const TdtProfile& profile, Mechanism mechanism,
              std::optional<SpsCase> sps_case, std::optional<NoiseSpec> noise,
              std::size_t m, double epsilon, double k_min = 0.5);

  std::size_t Select(std::span<const TdtTable> tables,
                     std::span<const double> scores, RngStream& rng) const;

  // Only for SPS.
  const std::optional<BudgetSplit>& budget() const { return budget_; }

 private:
  const TdtProfile& profile_;
  Mechanism mechanism_;
  std::optional<SpsCase> sps_case_;
  std::optional<NoiseSpec> noise_;
  double epsilon_;
  std::optional<BudgetSplit> budget_;
  double beta_prime_ = 0.0;
};

enum class CellStatus { kOk, kInfeasible, kUnavailable };

struct AccuracyRow {
  Mechanism mechanism;
  std::optional<SpsCase> sps_case;
  std::optional<double> gamma;
  int m = 0;
  double epsilon = 0.0;
  int n_families = 0;
  double threshold_t = 0.0;
  std::optional<double> k;
  std::optional<double> l;
  int repetitions = 0;
  CellStatus status = CellStatus::kOk;
  double accuracy_mean = 0.0;
  double accuracy_min = 0.0;
  double accuracy_max = 0.0;
  uint64_t seed = 0;
};

// EM, PF and the configured SPS cases on freshly generated data, per
// (m, epsilon) cell: repetitions x trials_per_cell selections, reporting the
// mean, min and max accuracy over repetitions. All mechanisms in a trial see
// the same dataset. A selection counts as correct when its score equals the
// maximum score.
std::vector<AccuracyRow> RunAccuracyExperiment(const ExperimentConfig& config,
                                               const TdtProfile& profile);

// Configured SPS cases for every gamma in config.gamma_values.
std::vector<AccuracyRow> RunGammaSweep(const ExperimentConfig& config,
                                       const TdtProfile& profile);

// A user-supplied score vector. `tables` is present when the file carries
// b and c columns, which SPS needs for its smooth bound.
struct FixedScoreSet {
  int n_families = 0;
  std::vector<std::string> labels;
  std::vector<double> scores;
  std::optional<std::vector<TdtTable>> tables;
};

// CSV with a "# N=<int>" metadata line and header "candidate,score" or
// "candidate,score,b,c". When b and c are given the score must equal the
// chi-square statistic of (b, c). Throws ParseError with the line number.
FixedScoreSet ReadScoreFile(std::istream& in);

// Per-epsilon accuracy of every configured mechanism and case on the fixed
// scores. SPS rows are "unavailable" without b and c.
std::vector<AccuracyRow> RunFixedScores(const FixedScoreSet& scores,
                                        const ExperimentConfig& config,
                                        const TdtProfile& profile);

struct TimingRow {
  std::string mechanism;  // em, pf, sps_thm4, sps_thm5
  int m = 0;
  double seconds_per_selection = 0.0;
  double ratio_to_em = 0.0;
  int runs = 0;
};

// Wall-clock time per selection for EM, PF and one-sided SPS with either
// bound, using the first configured epsilon. Each of `runs` runs draws a new
// dataset and times a batch of selections on it.
std::vector<TimingRow> RunTiming(const ExperimentConfig& config,
                                 const TdtProfile& profile, int runs = 10);

// Least-squares slope of log(y) against log(x).
double LogLogSlope(std::span<const double> x, std::span<const double> y);

// mechanism,case,gamma,m,epsilon,N,T,k,l,rep,accuracy_mean,accuracy_min,accuracy_max,seed
void WriteAccuracyCsv(std::span<const AccuracyRow> rows, std::ostream& out);
// mechanism,m,seconds_per_selection,ratio_to_em,runs
void WriteTimingCsv(std::span<const TimingRow> rows, std::ostream& out);

// Exhaustive check that GS exp(-beta gd(x)) matches the brute-force smooth
// sensitivity on the N-family grid at beta = ceiling and ceiling / 2.
struct ExactCheckResult {
  int n_families = 0;
  double beta_ceiling = 0.0;
  double max_relative_error = 0.0;
  bool passed = false;
};
ExactCheckResult CheckExactSmoothSensitivity(int n_families,
                                             double relative_tolerance = 1e-12);

// Exhaustive check of both smooth-upper-bound clauses (S >= LS everywhere,
// S(x) <= e^beta S(y) for neighbors) for the threshold bound at its ceiling.
struct ThresholdCheckResult {
  int n_families = 0;
  double threshold = 0.0;
  std::optional<double> beta_ceiling;  // empty when unbounded
  double beta = 0.0;
  long long dominance_violations = 0;
  long long smoothness_violations = 0;
  bool passed = false;
};
ThresholdCheckResult CheckThresholdSmoothBound(int n_families, double threshold);

}  // namespace smoothsel

#endif  // SMOOTHSEL_BENCH_H_
