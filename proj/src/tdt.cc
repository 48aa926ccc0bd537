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

#include "smoothsel/tdt.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "smoothsel/errors.h"

namespace smoothsel {
namespace {

constexpr char kProfileMagic[] = "# smoothsel tdt-profile v1";
constexpr char kProfileColumns[] = "b,c,local,distance_to_peak,distance_to_high";

int CeilHalf(int v) { return (v + 1) / 2; }

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ParseDouble(const std::string& text, int line) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') {
    throw ParseError(line, "expected a number, got '" + text + "'");
  }
  return v;
}

int ParseInt(const std::string& text, int line) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0') {
    throw ParseError(line, "expected an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

void TdtTable::Validate() const {
  if (n_families < 1) throw DomainError("a TDT table needs N >= 1 families");
  if (b < 0 || c < 0) throw DomainError("TDT counts must be non-negative");
  if (b + c > 2 * n_families) {
    throw DomainError("b + c = " + std::to_string(b + c) + " exceeds 2N = " +
                      std::to_string(2 * n_families));
  }
}

double TdtStatistic(const TdtTable& table) {
  table.Validate();
  const int s = table.b + table.c;
  if (s == 0) return 0.0;
  const double diff = table.b - table.c;
  return diff * diff / s;
}

double TdtGlobalSensitivity(int n_families) {
  if (n_families < 1) throw DomainError("N must be at least 1");
  return 8.0 * (n_families - 1) / n_families;
}

int TdtDistance(const TdtTable& t1, const TdtTable& t2) {
  t1.Validate();
  t2.Validate();
  if (t1.n_families != t2.n_families) {
    throw DomainError("TDT tables have different numbers of families");
  }
  const int db = t1.b - t2.b;
  const int dc = t1.c - t2.c;
  if (db * dc >= 0) return CeilHalf(std::abs(db + dc));
  return CeilHalf(std::max(std::abs(db), std::abs(dc)));
}

bool InHighSensitivityRegion(const TdtTable& table) {
  table.Validate();
  // Each disjunct, multiplied through by 7 to stay in integers.
  const int b = table.b;
  const int c = table.c;
  return (7 * c < b - 8) || (b >= 2 && 7 * b < c + 8) || (7 * b < c - 8) ||
         (c >= 2 && 7 * c < b + 8);
}

const std::vector<FamilyEdit>& FamilyEdits() {
  static const std::vector<FamilyEdit> edits = [] {
    std::vector<FamilyEdit> out;
    for (int db = -2; db <= 2; ++db) {
      for (int dc = -2; dc <= 2; ++dc) {
        if ((db != 0 || dc != 0) && std::abs(db + dc) <= 2) {
          out.push_back({db, dc});
        }
      }
    }
    return out;
  }();
  return edits;
}

TdtDomain::TdtDomain(int n_families) : n_(n_families) {
  if (n_ < 1) throw DomainError("N must be at least 1");
  const int width = 2 * n_ + 1;
  row_offset_.resize(width);
  for (int b = 0; b < width; ++b) {
    row_offset_[b] = b_of_.size();
    for (int c = 0; b + c < width; ++c) {
      b_of_.push_back(b);
      c_of_.push_back(c);
    }
  }
}

PointId TdtDomain::Index(int b, int c) const {
  if (b < 0 || c < 0 || b + c > 2 * n_) {
    throw DomainError("(" + std::to_string(b) + ", " + std::to_string(c) +
                      ") is outside the TDT grid for N = " + std::to_string(n_));
  }
  return row_offset_[b] + c;
}

PointId TdtDomain::Index(const TdtTable& table) const {
  if (table.n_families != n_) {
    throw DomainError("table has N = " + std::to_string(table.n_families) +
                      ", domain has N = " + std::to_string(n_));
  }
  return Index(table.b, table.c);
}

TdtTable TdtDomain::Table(PointId x) const {
  if (x >= NumPoints()) throw DomainError("point id outside the TDT grid");
  return {b_of_[x], c_of_[x], n_};
}

std::vector<PointId> TdtDomain::Neighbors(PointId x) const {
  const TdtTable t = Table(x);
  std::vector<PointId> out;
  out.reserve(FamilyEdits().size());
  for (const auto& e : FamilyEdits()) {
    const int b = t.b + e.db;
    const int c = t.c + e.dc;
    if (b >= 0 && c >= 0 && b + c <= 2 * n_) out.push_back(Index(b, c));
  }
  return out;
}

int TdtDomain::Distance(PointId x, PointId y) const {
  return TdtDistance(Table(x), Table(y));
}

double TdtDomain::Value(PointId x) const { return TdtStatistic(Table(x)); }

TdtProfile::TdtProfile(TdtDomain domain, SensitivityProfile profile)
    : domain_(std::move(domain)), profile_(std::move(profile)) {
  if (profile_.size() != domain_.NumPoints()) {
    throw DomainError("profile does not match the TDT grid");
  }
}

TdtProfile BuildTdtProfile(int n_families, double threshold) {
  TdtDomain domain(n_families);
  std::function<bool(PointId)> known_high;
  if (threshold <= 6.0) {
    known_high = [&domain](PointId x) {
      return InHighSensitivityRegion(domain.Table(x));
    };
  }
  SensitivityProfile profile =
      SensitivityProfile::Build(domain, threshold, known_high);
  return TdtProfile(std::move(domain), std::move(profile));
}

void WriteTdtProfile(const TdtProfile& profile, std::ostream& out) {
  const auto& p = profile.profile();
  out << kProfileMagic << '\n'
      << "# N=" << profile.n_families() << '\n'
      << "# T=" << FormatDouble(p.threshold()) << '\n'
      << "# GS=" << FormatDouble(p.global_sensitivity()) << '\n'
      << kProfileColumns << '\n';
  const TdtDomain& domain = profile.domain();
  for (PointId x = 0; x < domain.NumPoints(); ++x) {
    const TdtTable t = domain.Table(x);
    out << t.b << ',' << t.c << ',' << FormatDouble(p.local(x)) << ','
        << p.distance_to_peak(x) << ',' << p.distance_to_high(x) << '\n';
  }
}

TdtProfile ReadTdtProfile(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next() || line != kProfileMagic) {
    throw ParseError(1, "not a smoothsel TDT profile (v1)");
  }
  std::map<std::string, std::string> header;
  while (next() && line.rfind("# ", 0) == 0) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "bad header line");
    header[line.substr(2, eq - 2)] = line.substr(eq + 1);
  }
  for (const char* key : {"N", "T", "GS"}) {
    if (!header.count(key)) {
      throw ParseError(line_no, std::string("missing header ") + key);
    }
  }
  if (line != kProfileColumns) throw ParseError(line_no, "bad column header");

  const int n = ParseInt(header["N"], line_no);
  const double threshold = ParseDouble(header["T"], line_no);
  const double gs = ParseDouble(header["GS"], line_no);
  TdtDomain domain(n);
  const std::size_t size = domain.NumPoints();
  std::vector<double> local(size);
  std::vector<int> to_peak(size);
  std::vector<int> to_high(size);
  std::vector<char> seen(size, 0);
  while (next()) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 fields");
    const int b = ParseInt(fields[0], line_no);
    const int c = ParseInt(fields[1], line_no);
    if (b < 0 || c < 0 || b + c > 2 * n) {
      throw ParseError(line_no, "table outside the grid");
    }
    const PointId x = domain.Index(b, c);
    local[x] = ParseDouble(fields[2], line_no);
    to_peak[x] = ParseInt(fields[3], line_no);
    to_high[x] = ParseInt(fields[4], line_no);
    seen[x] = 1;
  }
  for (PointId x = 0; x < size; ++x) {
    if (!seen[x]) throw ParseError(line_no, "profile does not cover the grid");
  }
  return TdtProfile(std::move(domain),
                    SensitivityProfile::FromParts(gs, std::move(local),
                                                  std::move(to_peak), threshold,
                                                  std::move(to_high)));
}

std::filesystem::path TdtProfileCachePath(const std::filesystem::path& dir,
                                          int n_families, double threshold) {
  char name[96];
  std::snprintf(name, sizeof(name), "tdt_profile_N%d_T%.17g.csv", n_families,
                threshold);
  return dir / name;
}

TdtProfile LoadOrBuildTdtProfile(const std::filesystem::path& dir,
                                 int n_families, double threshold) {
  const auto path = TdtProfileCachePath(dir, n_families, threshold);
  if (std::ifstream in(path); in) {
    TdtProfile cached = ReadTdtProfile(in);
    if (cached.n_families() == n_families && cached.threshold() == threshold) {
      return cached;
    }
  }
  TdtProfile built = BuildTdtProfile(n_families, threshold);
  std::filesystem::create_directories(dir);
  std::ofstream out(path);
  if (!out) throw ConfigurationError("cannot write " + path.string());
  WriteTdtProfile(built, out);
  return built;
}

}  // namespace smoothsel
