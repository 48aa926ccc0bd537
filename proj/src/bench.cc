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
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "smoothsel/errors.h"

namespace smoothsel {
namespace {

// Stream tags for seed derivation.
constexpr uint64_t kDataStream = 1;
constexpr uint64_t kNoiseStream = 2;
constexpr uint64_t kTimingStream = 3;

uint64_t Bits(double v) { return std::bit_cast<uint64_t>(v); }

uint64_t MechanismTag(Mechanism mechanism, std::optional<SpsCase> sps_case) {
  return static_cast<uint64_t>(mechanism) * 16 +
         (sps_case ? static_cast<uint64_t>(*sps_case) + 1 : 0);
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

template <typename T>
std::vector<T> JsonList(const nlohmann::json& value, const char* key) {
  if (!value.is_array() || value.empty()) {
    throw ConfigurationError(std::string(key) + " must be a non-empty list");
  }
  return value.get<std::vector<T>>();
}

// Accuracy of one (mechanism, case, gamma) configuration over every
// repetition of an (m, epsilon) cell.
struct CellAccumulator {
  std::vector<int> correct;
};

AccuracyRow MakeRow(const ExperimentConfig& config, Mechanism mechanism,
                    std::optional<SpsCase> sps_case, std::optional<double> gamma,
                    int m, double epsilon, int n_families) {
  AccuracyRow row;
  row.mechanism = mechanism;
  row.sps_case = sps_case;
  row.gamma = gamma;
  row.m = m;
  row.epsilon = epsilon;
  row.n_families = n_families;
  row.threshold_t = config.threshold_t;
  row.repetitions = config.repetitions;
  row.seed = config.seed;
  return row;
}

void Summarize(const std::vector<int>& correct, int trials, AccuracyRow& row) {
  double sum = 0.0;
  row.accuracy_min = 1.0;
  row.accuracy_max = 0.0;
  for (int c : correct) {
    const double acc = static_cast<double>(c) / trials;
    sum += acc;
    row.accuracy_min = std::min(row.accuracy_min, acc);
    row.accuracy_max = std::max(row.accuracy_max, acc);
  }
  row.accuracy_mean = sum / correct.size();
}

struct Variant {
  Mechanism mechanism;
  std::optional<SpsCase> sps_case;
  std::optional<double> gamma;
};

// Runs every variant on the same simulated datasets of each (m, epsilon)
// cell.
std::vector<AccuracyRow> RunSimulatedCells(const ExperimentConfig& config,
                                           const TdtProfile& profile,
                                           const std::vector<Variant>& variants) {
  config.Validate();
  if (profile.n_families() != config.n_families) {
    throw ConfigurationError("profile N does not match the configuration");
  }
  std::vector<std::optional<NoiseSpec>> noises;
  for (const auto& v : variants) {
    if (v.gamma) {
      noises.push_back(NoiseSpec::Create(*v.gamma, SidednessOf(*v.sps_case)));
    } else {
      noises.push_back(std::nullopt);
    }
  }

  std::vector<AccuracyRow> rows;
  for (int m : config.m_values) {
    for (double epsilon : config.epsilon_values) {
      std::vector<std::optional<TdtSelector>> selectors;
      std::vector<AccuracyRow> cell_rows;
      for (std::size_t i = 0; i < variants.size(); ++i) {
        const Variant& v = variants[i];
        AccuracyRow row = MakeRow(config, v.mechanism, v.sps_case, v.gamma, m,
                                  epsilon, config.n_families);
        try {
          selectors.emplace_back(std::in_place, profile, v.mechanism,
                                 v.sps_case, noises[i], m, epsilon,
                                 config.k_min);
          if (const auto& budget = selectors.back()->budget()) {
            row.k = budget->k;
            row.l = budget->l;
          }
        } catch (const BudgetError&) {
          selectors.emplace_back(std::nullopt);
          row.status = CellStatus::kInfeasible;
        }
        cell_rows.push_back(row);
      }

      std::vector<std::vector<int>> correct(
          variants.size(), std::vector<int>(config.repetitions, 0));
      for (int rep = 0; rep < config.repetitions; ++rep) {
        for (int trial = 0; trial < config.trials_per_cell; ++trial) {
          const uint64_t cell_seed =
              DeriveSeed(config.seed, {static_cast<uint64_t>(m), Bits(epsilon),
                                       static_cast<uint64_t>(rep),
                                       static_cast<uint64_t>(trial)});
          RngStream data_rng(cell_seed, kDataStream);
          const GeneratedScores data =
              GenerateScores(config.n_families, m, data_rng);
          const double best_score = data.scores[data.best];
          for (std::size_t i = 0; i < variants.size(); ++i) {
            if (!selectors[i]) continue;
            RngStream noise_rng(
                DeriveSeed(cell_seed,
                           {kNoiseStream,
                            MechanismTag(variants[i].mechanism,
                                         variants[i].sps_case),
                            Bits(variants[i].gamma.value_or(0.0))}));
            const std::size_t pick =
                selectors[i]->Select(data.tables, data.scores, noise_rng);
            if (data.scores[pick] == best_score) ++correct[i][rep];
          }
        }
      }
      for (std::size_t i = 0; i < variants.size(); ++i) {
        if (cell_rows[i].status == CellStatus::kOk) {
          Summarize(correct[i], config.trials_per_cell, cell_rows[i]);
        }
        rows.push_back(cell_rows[i]);
      }
    }
  }
  return rows;
}

}  // namespace

std::string ToString(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kExponential:
      return "em";
    case Mechanism::kPermuteAndFlip:
      return "pf";
    case Mechanism::kSmoothPrivateSelection:
      return "sps";
  }
  return "?";
}

Mechanism ParseMechanism(const std::string& token) {
  if (token == "em") return Mechanism::kExponential;
  if (token == "pf") return Mechanism::kPermuteAndFlip;
  if (token == "sps") return Mechanism::kSmoothPrivateSelection;
  throw ConfigurationError("unknown mechanism '" + token + "'");
}

std::string ToString(SpsCase sps_case) {
  switch (sps_case) {
    case SpsCase::kExactTwoSided:
      return "thm4_two_sided";
    case SpsCase::kExactOneSided:
      return "thm4_one_sided";
    case SpsCase::kThresholdTwoSided:
      return "thm5_two_sided";
    case SpsCase::kThresholdOneSided:
      return "thm5_one_sided";
  }
  return "?";
}

SpsCase ParseSpsCase(const std::string& token) {
  for (SpsCase c : {SpsCase::kExactTwoSided, SpsCase::kExactOneSided,
                    SpsCase::kThresholdTwoSided, SpsCase::kThresholdOneSided}) {
    if (ToString(c) == token) return c;
  }
  throw ConfigurationError("unknown SPS case '" + token + "'");
}

Sidedness SidednessOf(SpsCase sps_case) {
  return (sps_case == SpsCase::kExactTwoSided ||
          sps_case == SpsCase::kThresholdTwoSided)
             ? Sidedness::kTwoSided
             : Sidedness::kOneSided;
}

bool UsesThreshold(SpsCase sps_case) {
  return sps_case == SpsCase::kThresholdTwoSided ||
         sps_case == SpsCase::kThresholdOneSided;
}

void ExperimentConfig::Validate() const {
  if (n_families < 1) throw ConfigurationError("n_families must be positive");
  if (m_values.empty() || epsilon_values.empty() || gamma_values.empty()) {
    throw ConfigurationError("m, epsilon and gamma lists must be non-empty");
  }
  for (int m : m_values) {
    if (m < 1) throw ConfigurationError("m values must be positive");
  }
  for (double e : epsilon_values) {
    if (!(e > 0.0)) throw ConfigurationError("epsilon values must be positive");
  }
  for (double g : gamma_values) {
    if (!(g > 1.0)) throw ConfigurationError("gamma values must exceed 1");
  }
  if (!(gamma > 1.0)) throw ConfigurationError("gamma must exceed 1");
  if (trials_per_cell < 1 || repetitions < 1) {
    throw ConfigurationError("trials and repetitions must be positive");
  }
  if (!(k_min > 0.0 && k_min < 1.0)) {
    throw ConfigurationError("k_min must lie in (0, 1)");
  }
}

ExperimentConfig ReadExperimentConfig(std::istream& in, ExperimentConfig base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("invalid config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigurationError("config must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "n_families") {
        base.n_families = value.get<int>();
      } else if (key == "m_values") {
        base.m_values = JsonList<int>(value, "m_values");
      } else if (key == "epsilon_values") {
        base.epsilon_values = JsonList<double>(value, "epsilon_values");
      } else if (key == "gamma") {
        base.gamma = value.get<double>();
      } else if (key == "gamma_values") {
        base.gamma_values = JsonList<double>(value, "gamma_values");
      } else if (key == "trials_per_cell") {
        base.trials_per_cell = value.get<int>();
      } else if (key == "repetitions") {
        base.repetitions = value.get<int>();
      } else if (key == "mechanisms") {
        base.mechanisms.clear();
        for (const auto& t : JsonList<std::string>(value, "mechanisms")) {
          base.mechanisms.push_back(ParseMechanism(t));
        }
      } else if (key == "sps_cases") {
        base.sps_cases.clear();
        for (const auto& t : JsonList<std::string>(value, "sps_cases")) {
          base.sps_cases.push_back(ParseSpsCase(t));
        }
      } else if (key == "threshold_T") {
        base.threshold_t = value.get<double>();
      } else if (key == "seed") {
        base.seed = value.get<uint64_t>();
      } else if (key == "k_min") {
        base.k_min = value.get<double>();
      } else {
        throw ConfigurationError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("bad config value: ") + e.what());
  }
  base.Validate();
  return base;
}

GeneratedScores GenerateScores(int n_families, int m, RngStream& rng) {
  if (n_families < 1 || m < 1) {
    throw ParameterError("need at least one family and one candidate");
  }
  GeneratedScores out;
  out.tables.reserve(m);
  out.scores.reserve(m);
  std::binomial_distribution<int> informative(2 * n_families, 2.0 / 3.0);
  for (int r = 0; r < m; ++r) {
    const int s = informative(rng);
    const int b = std::binomial_distribution<int>(s, 0.5)(rng);
    out.tables.push_back({b, s - b, n_families});
    out.scores.push_back(TdtStatistic(out.tables.back()));
    if (out.scores.back() > out.scores[out.best]) out.best = r;
  }
  return out;
}

SmoothBound SmoothBoundFor(const TdtProfile& profile, SpsCase sps_case,
                           std::span<const TdtTable> tables, double beta) {
  if (tables.empty()) throw ParameterError("empty candidate set");
  const SensitivityProfile& p = profile.profile();
  double best = 0.0;
  for (const TdtTable& t : tables) {
    const PointId x = profile.domain().Index(t);
    const double s = UsesThreshold(sps_case) ? ThresholdSmoothBound(p, x, beta)
                                             : ExactSmoothSensitivity(p, x, beta);
    best = std::max(best, s);
  }
  return {best, beta};
}

TdtSelector::TdtSelector(const TdtProfile& profile, Mechanism mechanism,
                         std::optional<SpsCase> sps_case,
                         std::optional<NoiseSpec> noise, std::size_t m,
                         double epsilon, double k_min)
    : profile_(profile),
      mechanism_(mechanism),
      sps_case_(sps_case),
      epsilon_(epsilon) {
  if (mechanism_ != Mechanism::kSmoothPrivateSelection) return;
  if (!sps_case_ || !noise) {
    throw ConfigurationError("SPS needs a case and a noise distribution");
  }
  noise_ = noise->WithSidedness(SidednessOf(*sps_case_));
  const SensitivityProfile& p = profile.profile();
  const BetaCeiling ceiling = UsesThreshold(*sps_case_)
                                  ? p.threshold_beta_ceiling()
                                  : p.exact_beta_ceiling();
  budget_ = ChooseBudget(m, noise_->sidedness(), noise_->gamma(), epsilon,
                         ceiling, k_min);
  beta_prime_ = noise_->Beta(budget_->l * epsilon);
  // An unbounded ceiling lets l saturate its cap; any beta is admissible.
}

std::size_t TdtSelector::Select(std::span<const TdtTable> tables,
                                std::span<const double> scores,
                                RngStream& rng) const {
  const double gs = profile_.profile().global_sensitivity();
  std::vector<double> values(scores.begin(), scores.end());
  switch (mechanism_) {
    case Mechanism::kExponential:
      return ExponentialMechanism(ScoreTable(std::move(values), gs), epsilon_,
                                  rng);
    case Mechanism::kPermuteAndFlip:
      return PermuteAndFlip(ScoreTable(std::move(values), gs), epsilon_, rng);
    case Mechanism::kSmoothPrivateSelection: {
      const SmoothBound bound =
          SmoothBoundFor(profile_, *sps_case_, tables, beta_prime_);
      return SmoothPrivateSelection(ScoreTable(std::move(values), gs, bound),
                                    *budget_, *noise_, rng);
    }
  }
  return 0;
}

std::vector<AccuracyRow> RunAccuracyExperiment(const ExperimentConfig& config,
                                               const TdtProfile& profile) {
  std::vector<Variant> variants;
  for (Mechanism mech : config.mechanisms) {
    if (mech != Mechanism::kSmoothPrivateSelection) {
      variants.push_back({mech, std::nullopt, std::nullopt});
      continue;
    }
    for (SpsCase c : config.sps_cases) variants.push_back({mech, c, config.gamma});
  }
  return RunSimulatedCells(config, profile, variants);
}

std::vector<AccuracyRow> RunGammaSweep(const ExperimentConfig& config,
                                       const TdtProfile& profile) {
  std::vector<Variant> variants;
  for (double gamma : config.gamma_values) {
    for (SpsCase c : config.sps_cases) {
      variants.push_back({Mechanism::kSmoothPrivateSelection, c, gamma});
    }
  }
  return RunSimulatedCells(config, profile, variants);
}

FixedScoreSet ReadScoreFile(std::istream& in) {
  FixedScoreSet set;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  bool with_counts = false;
  std::vector<TdtTable> tables;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("N=");
      if (pos != std::string::npos) {
        try {
          std::size_t used = 0;
          set.n_families = std::stoi(line.substr(pos + 2), &used);
        } catch (const std::exception&) {
          throw ParseError(line_no, "bad N metadata");
        }
        if (set.n_families < 1) throw ParseError(line_no, "N must be positive");
      }
      continue;
    }
    if (!have_header) {
      if (line == "candidate,score") {
        with_counts = false;
      } else if (line == "candidate,score,b,c") {
        with_counts = true;
      } else {
        throw ParseError(line_no,
                         "expected header candidate,score[,b,c], got '" + line +
                             "'");
      }
      have_header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    const std::size_t expected = with_counts ? 4 : 2;
    if (fields.size() != expected) {
      throw ParseError(line_no, "expected " + std::to_string(expected) +
                                    " fields, got " +
                                    std::to_string(fields.size()));
    }
    double score;
    try {
      std::size_t used = 0;
      score = std::stod(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad score '" + fields[1] + "'");
    }
    set.labels.push_back(fields[0]);
    set.scores.push_back(score);
    if (with_counts) {
      if (set.n_families < 1) {
        throw ParseError(line_no, "# N=<int> must precede the rows");
      }
      TdtTable t;
      try {
        t = {std::stoi(fields[2]), std::stoi(fields[3]), set.n_families};
        t.Validate();
      } catch (const std::exception& e) {
        throw ParseError(line_no, std::string("bad counts: ") + e.what());
      }
      const double chi2 = TdtStatistic(t);
      if (std::abs(chi2 - score) > 1e-6 * std::max(1.0, std::abs(chi2))) {
        throw ParseError(line_no, "score does not match (b - c)^2 / (b + c) = " +
                                      Fmt(chi2));
      }
      tables.push_back(t);
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (set.n_families < 1) throw ParseError(line_no, "missing # N=<int> line");
  if (set.scores.empty()) throw ParseError(line_no, "no candidates");
  if (with_counts) set.tables = std::move(tables);
  return set;
}

std::vector<AccuracyRow> RunFixedScores(const FixedScoreSet& scores,
                                        const ExperimentConfig& config,
                                        const TdtProfile& profile) {
  config.Validate();
  if (profile.n_families() != scores.n_families) {
    throw ConfigurationError("profile N does not match the score file");
  }
  const int m = static_cast<int>(scores.scores.size());
  const double best_score =
      *std::max_element(scores.scores.begin(), scores.scores.end());
  const NoiseSpec noise = NoiseSpec::Create(config.gamma, Sidedness::kOneSided);
  std::span<const TdtTable> tables;
  if (scores.tables) tables = *scores.tables;

  std::vector<AccuracyRow> rows;
  for (double epsilon : config.epsilon_values) {
    std::vector<Variant> variants;
    for (Mechanism mech : config.mechanisms) {
      if (mech != Mechanism::kSmoothPrivateSelection) {
        variants.push_back({mech, std::nullopt, std::nullopt});
      } else {
        for (SpsCase c : config.sps_cases) {
          variants.push_back({mech, c, config.gamma});
        }
      }
    }
    for (const Variant& v : variants) {
      AccuracyRow row = MakeRow(config, v.mechanism, v.sps_case, v.gamma, m,
                                epsilon, scores.n_families);
      if (v.sps_case && !scores.tables) {
        row.status = CellStatus::kUnavailable;
        rows.push_back(row);
        continue;
      }
      std::optional<TdtSelector> selector;
      try {
        selector.emplace(profile, v.mechanism, v.sps_case,
                         v.gamma ? std::optional<NoiseSpec>(noise) : std::nullopt,
                         m, epsilon, config.k_min);
      } catch (const BudgetError&) {
        row.status = CellStatus::kInfeasible;
        rows.push_back(row);
        continue;
      }
      if (const auto& budget = selector->budget()) {
        row.k = budget->k;
        row.l = budget->l;
      }
      std::vector<int> correct(config.repetitions, 0);
      for (int rep = 0; rep < config.repetitions; ++rep) {
        for (int trial = 0; trial < config.trials_per_cell; ++trial) {
          RngStream rng(DeriveSeed(
              config.seed, {kNoiseStream, Bits(epsilon), static_cast<uint64_t>(rep),
                            static_cast<uint64_t>(trial),
                            MechanismTag(v.mechanism, v.sps_case)}));
          const std::size_t pick = selector->Select(tables, scores.scores, rng);
          if (scores.scores[pick] == best_score) ++correct[rep];
        }
      }
      Summarize(correct, config.trials_per_cell, row);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<TimingRow> RunTiming(const ExperimentConfig& config,
                                 const TdtProfile& profile, int runs) {
  config.Validate();
  if (runs < 1) throw ConfigurationError("runs must be positive");
  const double epsilon = config.epsilon_values.front();
  const NoiseSpec noise = NoiseSpec::Create(config.gamma, Sidedness::kOneSided);
  struct Entry {
    const char* name;
    Mechanism mechanism;
    std::optional<SpsCase> sps_case;
  };
  const Entry entries[] = {
      {"em", Mechanism::kExponential, std::nullopt},
      {"pf", Mechanism::kPermuteAndFlip, std::nullopt},
      {"sps_thm4", Mechanism::kSmoothPrivateSelection, SpsCase::kExactOneSided},
      {"sps_thm5", Mechanism::kSmoothPrivateSelection,
       SpsCase::kThresholdOneSided},
  };

  std::vector<TimingRow> rows;
  volatile std::size_t sink = 0;
  for (int m : config.m_values) {
    const int batch = std::max(4, 40000 / m);
    std::vector<double> seconds(std::size(entries), 0.0);
    std::vector<TdtSelector> selectors;
    for (const Entry& e : entries) {
      selectors.emplace_back(profile, e.mechanism, e.sps_case, noise, m, epsilon,
                             config.k_min);
    }
    for (int run = 0; run < runs; ++run) {
      RngStream data_rng(DeriveSeed(config.seed, {kTimingStream,
                                                  static_cast<uint64_t>(m),
                                                  static_cast<uint64_t>(run)}));
      const GeneratedScores data = GenerateScores(config.n_families, m, data_rng);
      for (std::size_t i = 0; i < selectors.size(); ++i) {
        RngStream rng = data_rng.Split(i);
        const auto start = std::chrono::steady_clock::now();
        for (int rep = 0; rep < batch; ++rep) {
          sink = sink + selectors[i].Select(data.tables, data.scores, rng);
        }
        const auto stop = std::chrono::steady_clock::now();
        seconds[i] += std::chrono::duration<double>(stop - start).count();
      }
    }
    const double em = seconds[0] / (static_cast<double>(runs) * batch);
    for (std::size_t i = 0; i < selectors.size(); ++i) {
      TimingRow row;
      row.mechanism = entries[i].name;
      row.m = m;
      row.seconds_per_selection = seconds[i] / (static_cast<double>(runs) * batch);
      row.ratio_to_em = row.seconds_per_selection / em;
      row.runs = runs;
      rows.push_back(row);
    }
  }
  return rows;
}

double LogLogSlope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ParameterError("slope needs two or more matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) {
      throw ParameterError("log-log slope needs positive values");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void WriteAccuracyCsv(std::span<const AccuracyRow> rows, std::ostream& out) {
  out << "mechanism,case,gamma,m,epsilon,N,T,k,l,rep,accuracy_mean,"
         "accuracy_min,accuracy_max,seed\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? Fmt(*v) : std::string("NA");
  };
  for (const AccuracyRow& r : rows) {
    out << ToString(r.mechanism) << ','
        << (r.sps_case ? ToString(*r.sps_case) : "NA") << ',' << opt(r.gamma)
        << ',' << r.m << ',' << Fmt(r.epsilon) << ',' << r.n_families << ','
        << Fmt(r.threshold_t) << ',' << opt(r.k) << ',' << opt(r.l) << ','
        << r.repetitions << ',';
    switch (r.status) {
      case CellStatus::kOk:
        out << Fmt(r.accuracy_mean) << ',' << Fmt(r.accuracy_min) << ','
            << Fmt(r.accuracy_max);
        break;
      case CellStatus::kInfeasible:
        out << "infeasible,infeasible,infeasible";
        break;
      case CellStatus::kUnavailable:
        out << "unavailable,unavailable,unavailable";
        break;
    }
    out << ',' << r.seed << '\n';
  }
}

void WriteTimingCsv(std::span<const TimingRow> rows, std::ostream& out) {
  out << "mechanism,m,seconds_per_selection,ratio_to_em,runs\n";
  for (const TimingRow& r : rows) {
    out << r.mechanism << ',' << r.m << ',' << Fmt(r.seconds_per_selection)
        << ',' << Fmt(r.ratio_to_em) << ',' << r.runs << '\n';
  }
}

ExactCheckResult CheckExactSmoothSensitivity(int n_families,
                                             double relative_tolerance) {
  const TdtDomain domain(n_families);
  const SensitivityProfile profile = SensitivityProfile::Build(domain);
  const SmoothSensitivityOracle oracle(domain);
  ExactCheckResult result;
  result.n_families = n_families;
  const BetaCeiling ceiling = profile.exact_beta_ceiling();
  result.beta_ceiling = ceiling.bounded() ? ceiling.value() : 1.0;
  for (double beta : {result.beta_ceiling, result.beta_ceiling / 2.0}) {
    for (PointId x = 0; x < domain.NumPoints(); ++x) {
      const double fast = ExactSmoothSensitivity(profile, x, beta);
      const double slow = oracle(x, beta);
      const double err = std::abs(fast - slow) / std::max(slow, 1e-300);
      result.max_relative_error = std::max(result.max_relative_error, err);
    }
  }
  result.passed = result.max_relative_error <= relative_tolerance;
  return result;
}

ThresholdCheckResult CheckThresholdSmoothBound(int n_families, double threshold) {
  const TdtDomain domain(n_families);
  const SensitivityProfile profile =
      SensitivityProfile::Build(domain, threshold);
  ThresholdCheckResult result;
  result.n_families = n_families;
  result.threshold = threshold;
  const BetaCeiling ceiling = profile.threshold_beta_ceiling();
  if (ceiling.bounded()) result.beta_ceiling = ceiling.value();
  result.beta = ceiling.bounded() ? ceiling.value() : 1.0;
  std::vector<double> bound(domain.NumPoints());
  for (PointId x = 0; x < domain.NumPoints(); ++x) {
    bound[x] = ThresholdSmoothBound(profile, x, result.beta);
    if (bound[x] < LocalSensitivity(domain, x) * (1.0 - 1e-12)) {
      ++result.dominance_violations;
    }
  }
  const double growth = std::exp(result.beta) * (1.0 + 1e-12);
  for (PointId x = 0; x < domain.NumPoints(); ++x) {
    for (PointId y : domain.Neighbors(x)) {
      if (bound[x] > growth * bound[y]) ++result.smoothness_violations;
    }
  }
  result.passed =
      result.dominance_violations == 0 && result.smoothness_violations == 0;
  return result;
}

}  // namespace smoothsel
