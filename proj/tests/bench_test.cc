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

#include "smoothsel/bench.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "smoothsel/errors.h"

namespace smoothsel {
namespace {

const TdtProfile& Profile150() {
  static const TdtProfile* profile = new TdtProfile(BuildTdtProfile(150, 6.0));
  return *profile;
}

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.m_values = {5};
  c.epsilon_values = {3};
  c.trials_per_cell = 20;
  c.repetitions = 2;
  return c;
}

std::string AccuracyCsv(const std::vector<AccuracyRow>& rows) {
  std::ostringstream out;
  WriteAccuracyCsv(rows, out);
  return out.str();
}

TEST(TokensTest, RoundTrip) {
  for (Mechanism m : {Mechanism::kExponential, Mechanism::kPermuteAndFlip,
                      Mechanism::kSmoothPrivateSelection}) {
    EXPECT_EQ(ParseMechanism(ToString(m)), m);
  }
  for (SpsCase c : {SpsCase::kExactTwoSided, SpsCase::kExactOneSided,
                    SpsCase::kThresholdTwoSided, SpsCase::kThresholdOneSided}) {
    EXPECT_EQ(ParseSpsCase(ToString(c)), c);
  }
  EXPECT_EQ(ToString(SpsCase::kThresholdOneSided), "thm5_one_sided");
  EXPECT_EQ(SidednessOf(SpsCase::kExactTwoSided), Sidedness::kTwoSided);
  EXPECT_TRUE(UsesThreshold(SpsCase::kThresholdTwoSided));
  EXPECT_FALSE(UsesThreshold(SpsCase::kExactOneSided));
  EXPECT_THROW(ParseMechanism("laplace"), ConfigurationError);
  EXPECT_THROW(ParseSpsCase("thm6"), ConfigurationError);
}

TEST(ExperimentConfigTest, DefaultsAreValid) {
  const ExperimentConfig c;
  EXPECT_NO_THROW(c.Validate());
  EXPECT_EQ(c.n_families, 150);
  EXPECT_EQ(c.epsilon_values.size(), 7u);
  EXPECT_EQ(c.trials_per_cell * c.repetitions, 200);
}

TEST(ExperimentConfigTest, ReadsJson) {
  std::istringstream in(R"({"n_families": 20, "m_values": [3, 4],
      "epsilon_values": [1.5], "gamma": 6, "trials_per_cell": 7,
      "repetitions": 2, "mechanisms": ["em", "sps"],
      "sps_cases": ["thm5_one_sided"], "threshold_T": 5, "seed": 99})");
  const ExperimentConfig c = ReadExperimentConfig(in);
  EXPECT_EQ(c.n_families, 20);
  EXPECT_EQ(c.m_values, (std::vector<int>{3, 4}));
  EXPECT_EQ(c.epsilon_values, (std::vector<double>{1.5}));
  EXPECT_EQ(c.gamma, 6.0);
  EXPECT_EQ(c.trials_per_cell, 7);
  EXPECT_EQ(c.mechanisms.size(), 2u);
  EXPECT_EQ(c.sps_cases, (std::vector<SpsCase>{SpsCase::kThresholdOneSided}));
  EXPECT_EQ(c.threshold_t, 5.0);
  EXPECT_EQ(c.seed, 99u);
}

TEST(ExperimentConfigTest, RejectsBadInput) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return ReadExperimentConfig(in);
  };
  EXPECT_THROW(read(R"({"n_familes": 3})"), ConfigurationError);
  EXPECT_THROW(read(R"({"trials_per_cell": 0})"), ConfigurationError);
  EXPECT_THROW(read(R"({"epsilon_values": [1, -2]})"), ConfigurationError);
  EXPECT_THROW(read(R"({"m_values": []})"), ConfigurationError);
  EXPECT_THROW(read(R"({"seed": "abc"})"), ConfigurationError);
  EXPECT_THROW(read("[1, 2]"), ConfigurationError);
  EXPECT_THROW(read("{"), ConfigurationError);
}

TEST(GenerateScoresTest, BinomialMeans) {
  RngStream rng(1);
  const GeneratedScores g = GenerateScores(150, 10000, rng);
  double s = 0.0, b = 0.0;
  for (const TdtTable& t : g.tables) {
    s += t.b + t.c;
    b += t.b;
    ASSERT_NO_THROW(t.Validate());
  }
  EXPECT_NEAR(s / 10000, 200.0, 2.0);
  EXPECT_NEAR(b / 10000, 100.0, 1.5);
}

TEST(GenerateScoresTest, ScoresAndArgmax) {
  RngStream rng(2);
  const GeneratedScores g = GenerateScores(150, 50, rng);
  ASSERT_EQ(g.scores.size(), 50u);
  for (std::size_t r = 0; r < 50; ++r) {
    EXPECT_DOUBLE_EQ(g.scores[r], TdtStatistic(g.tables[r]));
  }
  const auto top = std::max_element(g.scores.begin(), g.scores.end());
  EXPECT_EQ(g.best, static_cast<std::size_t>(top - g.scores.begin()));
}

TEST(GenerateScoresTest, Reproducible) {
  RngStream a(3), b(3);
  const GeneratedScores x = GenerateScores(150, 20, a);
  const GeneratedScores y = GenerateScores(150, 20, b);
  EXPECT_EQ(x.tables, y.tables);
  EXPECT_EQ(x.scores, y.scores);
  EXPECT_THROW(GenerateScores(0, 5, a), ParameterError);
}

TEST(SmoothBoundForTest, UsesTheClosestTable) {
  const TdtProfile& p = Profile150();
  const std::vector<TdtTable> tables{{100, 100, 150}, {150, 60, 150}};
  const double beta = 0.01;
  const int gd = std::min(p.DistanceToPeak(tables[0]), p.DistanceToPeak(tables[1]));
  const int ud = std::min(p.DistanceToHigh(tables[0]), p.DistanceToHigh(tables[1]));
  const double gs = p.profile().global_sensitivity();
  EXPECT_NEAR(SmoothBoundFor(p, SpsCase::kThresholdOneSided, tables, beta).max_value,
              gs * std::exp(-beta * ud), 1e-12);
  const double small = 1e-5;
  EXPECT_NEAR(SmoothBoundFor(p, SpsCase::kExactTwoSided, tables, small).max_value,
              gs * std::exp(-small * gd), 1e-12);
  EXPECT_THROW(SmoothBoundFor(p, SpsCase::kExactTwoSided, tables, 1.0),
               PreconditionError);
  EXPECT_THROW(SmoothBoundFor(p, SpsCase::kExactTwoSided, {}, small),
               ParameterError);
}

TEST(TdtSelectorTest, SpsNeedsCaseAndNoise) {
  EXPECT_THROW(TdtSelector(Profile150(), Mechanism::kSmoothPrivateSelection,
                           std::nullopt, std::nullopt, 5, 3.0),
               ConfigurationError);
  const TdtSelector em(Profile150(), Mechanism::kExponential, std::nullopt,
                       std::nullopt, 5, 3.0);
  EXPECT_FALSE(em.budget().has_value());
}

TEST(TdtSelectorTest, BudgetIsTight) {
  const NoiseSpec noise = NoiseSpec::Create(4, Sidedness::kTwoSided, 256);
  for (SpsCase c : {SpsCase::kExactTwoSided, SpsCase::kThresholdOneSided}) {
    const TdtSelector s(Profile150(), Mechanism::kSmoothPrivateSelection, c,
                        noise, 10, 9.0);
    ASSERT_TRUE(s.budget().has_value());
    EXPECT_NEAR(s.budget()->PrivacyLoss(10), 9.0, 1e-9);
    EXPECT_EQ(s.budget()->sidedness, SidednessOf(c));
  }
}

// Null scores often nearly tie at the top, so EM still errs about 9% of the
// time at epsilon = 100; the near-noiseless regime starts around 1000.
TEST(AccuracyExperimentTest, NearNoiselessRegime) {
  ExperimentConfig c = SmallConfig();
  c.epsilon_values = {1000};
  c.trials_per_cell = 100;
  const auto rows = RunAccuracyExperiment(c, Profile150());
  ASSERT_EQ(rows.size(), 6u);
  for (const AccuracyRow& r : rows) {
    EXPECT_EQ(r.status, CellStatus::kOk);
    EXPECT_GE(r.accuracy_mean, 0.95) << ToString(r.mechanism);
    EXPECT_LE(r.accuracy_min, r.accuracy_mean);
    EXPECT_GE(r.accuracy_max, r.accuracy_mean);
  }
}

TEST(AccuracyExperimentTest, CsvIsReproducible) {
  const ExperimentConfig c = SmallConfig();
  const std::string a = AccuracyCsv(RunAccuracyExperiment(c, Profile150()));
  const std::string b = AccuracyCsv(RunAccuracyExperiment(c, Profile150()));
  EXPECT_EQ(a, b);
  ExperimentConfig other = c;
  other.seed = 2;
  EXPECT_NE(a, AccuracyCsv(RunAccuracyExperiment(other, Profile150())));
}

TEST(AccuracyExperimentTest, CsvLayout) {
  const std::string csv = AccuracyCsv(RunAccuracyExperiment(SmallConfig(), Profile150()));
  std::istringstream in(csv);
  std::string header, em, pf, sps;
  std::getline(in, header);
  std::getline(in, em);
  std::getline(in, pf);
  std::getline(in, sps);
  EXPECT_EQ(header,
            "mechanism,case,gamma,m,epsilon,N,T,k,l,rep,accuracy_mean,"
            "accuracy_min,accuracy_max,seed");
  EXPECT_EQ(em.rfind("em,NA,NA,5,3,150,6,NA,NA,2,", 0), 0u) << em;
  EXPECT_EQ(pf.rfind("pf,NA,NA,5,3,150,6,NA,NA,2,", 0), 0u) << pf;
  EXPECT_EQ(sps.rfind("sps,thm4_two_sided,4,5,3,150,6,", 0), 0u) << sps;
}

TEST(AccuracyExperimentTest, StatusColumns) {
  AccuracyRow row;
  row.mechanism = Mechanism::kSmoothPrivateSelection;
  row.sps_case = SpsCase::kExactOneSided;
  row.gamma = 4;
  row.m = 3;
  row.epsilon = 1;
  row.n_families = 10;
  row.threshold_t = 6;
  row.repetitions = 5;
  row.seed = 7;
  row.status = CellStatus::kInfeasible;
  EXPECT_NE(AccuracyCsv({row}).find(
                "sps,thm4_one_sided,4,3,1,10,6,NA,NA,5,infeasible,infeasible,"
                "infeasible,7"),
            std::string::npos);
  row.status = CellStatus::kUnavailable;
  EXPECT_NE(AccuracyCsv({row}).find("unavailable,unavailable,unavailable"),
            std::string::npos);
}

TEST(AccuracyExperimentTest, ProfileMustMatch) {
  ExperimentConfig c = SmallConfig();
  c.n_families = 20;
  EXPECT_THROW(RunAccuracyExperiment(c, Profile150()), ConfigurationError);
}

TEST(GammaSweepTest, RowsPerGamma) {
  ExperimentConfig c = SmallConfig();
  c.sps_cases = {SpsCase::kThresholdOneSided};
  const auto rows = RunGammaSweep(c, Profile150());
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(*rows[i].gamma, c.gamma_values[i]);
    EXPECT_GE(rows[i].accuracy_min, 0.0);
    EXPECT_LE(rows[i].accuracy_max, 1.0);
  }
}

FixedScoreSet ParseScores(const std::string& text) {
  std::istringstream in(text);
  return ReadScoreFile(in);
}

int ScoreParseErrorLine(const std::string& text) {
  try {
    ParseScores(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ScoreFileTest, ParsesBothLayouts) {
  const FixedScoreSet plain = ParseScores("# N=12\ncandidate,score\na,1.5\nb,0.25\n");
  EXPECT_EQ(plain.n_families, 12);
  EXPECT_EQ(plain.labels, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(plain.scores, (std::vector<double>{1.5, 0.25}));
  EXPECT_FALSE(plain.tables.has_value());
  const FixedScoreSet counts =
      ParseScores("# N=12\ncandidate,score,b,c\nx,3,3,0\ny,0,2,2\n");
  ASSERT_TRUE(counts.tables.has_value());
  EXPECT_EQ((*counts.tables)[0], (TdtTable{3, 0, 12}));
}

TEST(ScoreFileTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(ScoreParseErrorLine("# N=5\ncandidate,value\n"), 2);
  EXPECT_EQ(ScoreParseErrorLine("# N=5\ncandidate,score\na,1\nb,x\n"), 4);
  EXPECT_EQ(ScoreParseErrorLine("# N=5\ncandidate,score\na,1,2\n"), 3);
  EXPECT_EQ(ScoreParseErrorLine("# N=5\ncandidate,score,b,c\na,1,3,0\n"), 3);
  EXPECT_EQ(ScoreParseErrorLine("# N=2\ncandidate,score,b,c\na,9,9,0\n"), 3);
  EXPECT_EQ(ScoreParseErrorLine("# N=abc\n"), 1);
  EXPECT_GT(ScoreParseErrorLine("candidate,score\na,1\n"), 0);
  EXPECT_GT(ScoreParseErrorLine("# N=5\ncandidate,score\n"), 0);
}

TEST(FixedScoresTest, SingleCandidateIsAlwaysRight) {
  const FixedScoreSet one = ParseScores("# N=150\ncandidate,score,b,c\nonly,2,6,2\n");
  ExperimentConfig c = SmallConfig();
  c.epsilon_values = {0.5, 3};
  const auto rows = RunFixedScores(one, c, Profile150());
  ASSERT_EQ(rows.size(), 12u);
  for (const AccuracyRow& r : rows) {
    EXPECT_EQ(r.status, CellStatus::kOk);
    EXPECT_EQ(r.accuracy_mean, 1.0);
  }
}

TEST(FixedScoresTest, SpsUnavailableWithoutCounts) {
  const FixedScoreSet plain =
      ParseScores("# N=150\ncandidate,score\na,10\nb,2\n");
  const auto rows = RunFixedScores(plain, SmallConfig(), Profile150());
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].status, CellStatus::kOk);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].status, CellStatus::kUnavailable);
  }
}

TEST(FixedScoresTest, ReorderingKeepsAccuracy) {
  const std::string head = "# N=150\ncandidate,score,b,c\n";
  const FixedScoreSet forward =
      ParseScores(head + "a,8,8,0\nb,1.8,4,1\nc,0,3,3\n");
  const FixedScoreSet backward =
      ParseScores(head + "c,0,3,3\nb,1.8,4,1\na,8,8,0\n");
  ExperimentConfig c = SmallConfig();
  c.trials_per_cell = 1000;
  const auto f = RunFixedScores(forward, c, Profile150());
  const auto b = RunFixedScores(backward, c, Profile150());
  ASSERT_EQ(f.size(), b.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double p = f[i].accuracy_mean;
    const double se = std::sqrt(std::max(p * (1 - p), 0.01) / 2000);
    EXPECT_NEAR(f[i].accuracy_mean, b[i].accuracy_mean, 5 * se) << i;
  }
}

TEST(FixedScoresTest, SyntheticFixtureFavorsThresholdCase) {
  std::ifstream in(std::string(SMOOTHSEL_TEST_DATA_DIR) + "/six_snps.csv");
  ASSERT_TRUE(in);
  const FixedScoreSet six = ReadScoreFile(in);
  ASSERT_EQ(six.n_families, 215);
  const TdtProfile profile = BuildTdtProfile(215, 6.0);
  ExperimentConfig c;
  c.n_families = 215;
  c.epsilon_values = {21};
  c.mechanisms = {Mechanism::kSmoothPrivateSelection};
  c.sps_cases = {SpsCase::kExactTwoSided, SpsCase::kThresholdOneSided};
  const auto rows = RunFixedScores(six, c, profile);
  ASSERT_EQ(rows.size(), 2u);
  const double n = c.trials_per_cell * c.repetitions;
  const double p1 = rows[0].accuracy_mean;
  const double p4 = rows[1].accuracy_mean;
  const double se = std::sqrt((p1 * (1 - p1) + p4 * (1 - p4)) / n);
  EXPECT_GE(p4, p1 - 2 * se);
}

TEST(TimingTest, RowsAndRatios) {
  ExperimentConfig c;
  c.m_values = {20, 40};
  const auto rows = RunTiming(c, Profile150(), 2);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].mechanism, "em");
  EXPECT_EQ(rows[3].mechanism, "sps_thm5");
  EXPECT_DOUBLE_EQ(rows[0].ratio_to_em, 1.0);
  for (const TimingRow& r : rows) EXPECT_GT(r.seconds_per_selection, 0.0);
  std::ostringstream out;
  WriteTimingCsv(rows, out);
  EXPECT_EQ(out.str().rfind("mechanism,m,seconds_per_selection,ratio_to_em,runs\n", 0),
            0u);
}

TEST(LogLogSlopeTest, PowerLaw) {
  const std::vector<double> x{20, 50, 100, 200};
  std::vector<double> y;
  for (double v : x) y.push_back(3 * std::pow(v, 1.2));
  EXPECT_NEAR(LogLogSlope(x, y), 1.2, 1e-12);
  EXPECT_THROW(LogLogSlope(std::vector<double>{1}, std::vector<double>{1}),
               ParameterError);
  EXPECT_THROW(LogLogSlope(std::vector<double>{1, 2}, std::vector<double>{1, 0}),
               ParameterError);
}

TEST(ChecksTest, SmallGridsPass) {
  for (int n : {2, 3, 4}) {
    const ExactCheckResult exact = CheckExactSmoothSensitivity(n);
    EXPECT_TRUE(exact.passed) << "N=" << n;
    const double gs = TdtGlobalSensitivity(n);
    const ThresholdCheckResult thr = CheckThresholdSmoothBound(n, gs / 2);
    EXPECT_TRUE(thr.passed) << "N=" << n;
  }
  EXPECT_THROW(CheckThresholdSmoothBound(3, 6.0), ConfigurationError);
}

}  // namespace
}  // namespace smoothsel
