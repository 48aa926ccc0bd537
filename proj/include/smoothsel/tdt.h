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

#ifndef SMOOTHSEL_TDT_H_
#define SMOOTHSEL_TDT_H_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "smoothsel/sensitivity.h"

namespace smoothsel {

// Transmission counts for one SNP across N families: b parents transmitted
// A1 and not A2, c parents transmitted A2 and not A1. At most 2N parents
// are informative, so b + c <= 2N.
struct TdtTable {
  int b = 0;
  int c = 0;
  int n_families = 1;

  // Throws DomainError when the counts are negative, N < 1 or b + c > 2N.
  void Validate() const;

  friend bool operator==(const TdtTable&, const TdtTable&) = default;
};

// (b - c)^2 / (b + c), and 0 for the empty table.
double TdtStatistic(const TdtTable& table);

// 8 (N - 1) / N. Throws DomainError for N < 1.
double TdtGlobalSensitivity(int n_families);

// Minimum number of families that must change to turn one table into the
// other. Throws DomainError when the tables disagree on N.
int TdtDistance(const TdtTable& t1, const TdtTable& t2);

// Sufficient condition for LS(b, c) > 6: the counts are lopsided enough
// that a single family can move the statistic by more than 6.
bool InHighSensitivityRegion(const TdtTable& table);

// Change of (b, c) from editing one family. Each of its two parents moves
// between the four transmission classes, shifting (b, c) by one of
// (0,0), (+-1,0), (0,+-1), +-(1,-1); the family edit is the sum of two such
// moves, i.e. |db| <= 2, |dc| <= 2 and |db + dc| <= 2.
struct FamilyEdit {
  int db;
  int dc;
};
const std::vector<FamilyEdit>& FamilyEdits();

// All tables with b + c <= 2N, with the chi-square statistic as the query.
// Point ids are laid out row by row in b.
class TdtDomain final : public FiniteDomain {
 public:
  // Throws DomainError for N < 1.
  explicit TdtDomain(int n_families);

  int n_families() const { return n_; }

  std::size_t NumPoints() const override { return b_of_.size(); }
  std::vector<PointId> Neighbors(PointId x) const override;
  int Distance(PointId x, PointId y) const override;
  double Value(PointId x) const override;

  // Throws DomainError for tables outside the grid or with another N.
  PointId Index(const TdtTable& table) const;
  PointId Index(int b, int c) const;
  TdtTable Table(PointId x) const;

 private:
  int n_;
  std::vector<std::size_t> row_offset_;
  std::vector<int> b_of_;
  std::vector<int> c_of_;
};

// Sensitivity profile of the chi-square statistic over the full grid.
class TdtProfile {
 public:
  TdtProfile(TdtDomain domain, SensitivityProfile profile);

  const TdtDomain& domain() const { return domain_; }
  const SensitivityProfile& profile() const { return profile_; }
  int n_families() const { return domain_.n_families(); }
  double threshold() const { return profile_.threshold(); }

  double Local(const TdtTable& table) const {
    return profile_.local(domain_.Index(table));
  }
  int DistanceToPeak(const TdtTable& table) const {
    return profile_.distance_to_peak(domain_.Index(table));
  }
  int DistanceToHigh(const TdtTable& table) const {
    return profile_.distance_to_high(domain_.Index(table));
  }

 private:
  TdtDomain domain_;
  SensitivityProfile profile_;
};

// Enumerates the grid, computes LS by neighbor enumeration, distances to the
// peak set and to U = {LS > T} by breadth-first search, and both ceilings.
// The high-region predicate is used as a shortcut for U membership when
// T <= 6. Throws ConfigurationError when T >= GS.
TdtProfile BuildTdtProfile(int n_families, double threshold);

// Versioned CSV cache: a few "# key=value" header lines followed by
// b,c,local,distance_to_peak,distance_to_high rows.
void WriteTdtProfile(const TdtProfile& profile, std::ostream& out);
// Throws ParseError on malformed input.
TdtProfile ReadTdtProfile(std::istream& in);

std::filesystem::path TdtProfileCachePath(const std::filesystem::path& dir,
                                          int n_families, double threshold);

// Reads the cached profile for (N, T) from `dir`, or builds and writes it.
TdtProfile LoadOrBuildTdtProfile(const std::filesystem::path& dir,
                                 int n_families, double threshold);

}  // namespace smoothsel

#endif  // SMOOTHSEL_TDT_H_
