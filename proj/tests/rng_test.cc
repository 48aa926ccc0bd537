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

#include "smoothsel/rng.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

namespace smoothsel {
namespace {

TEST(RngStreamTest, SameSeedReplaysSameSequence) {
  RngStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
  EXPECT_EQ(a.counter(), 1000u);
}

TEST(RngStreamTest, DifferentStreamsDiffer) {
  RngStream a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t x = a();
    same_ab += x == b();
    same_ac += x == c();
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(RngStreamTest, SplitDoesNotAdvanceParent) {
  RngStream parent(7);
  parent();
  const uint64_t before = parent.counter();
  RngStream child = parent.Split(3);
  EXPECT_EQ(parent.counter(), before);
  RngStream again = parent.Split(3);
  EXPECT_EQ(child(), again());
  EXPECT_NE(parent.Split(4)(), parent.Split(3)());
}

TEST(RngStreamTest, UniformRanges) {
  RngStream rng(11);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.UniformPositive();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_LT(lo, 1e-4);
  EXPECT_GT(hi, 1 - 1e-4);
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(RngStreamTest, BelowIsUniform) {
  RngStream rng(5);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const uint64_t r = rng.Below(7);
    ASSERT_LT(r, 7u);
    ++counts[r];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  // 6 degrees of freedom; the 0.999 quantile is 22.5.
  EXPECT_LT(chi2, 22.5);
  EXPECT_EQ(rng.Below(1), 0u);
}

TEST(RngStreamTest, WorksWithStandardDistributions) {
  RngStream rng(9);
  std::binomial_distribution<int> binom(300, 2.0 / 3.0);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) sum += binom(rng);
  EXPECT_NEAR(sum / 10000, 200.0, 0.5);
}

TEST(DeriveSeedTest, OrderAndContentMatter) {
  std::set<uint64_t> seeds;
  seeds.insert(DeriveSeed(1, {}));
  seeds.insert(DeriveSeed(1, {0}));
  seeds.insert(DeriveSeed(1, {1, 2}));
  seeds.insert(DeriveSeed(1, {2, 1}));
  seeds.insert(DeriveSeed(2, {1, 2}));
  EXPECT_EQ(seeds.size(), 5u);
  EXPECT_EQ(DeriveSeed(1, {1, 2}), DeriveSeed(1, {1, 2}));
}

}  // namespace
}  // namespace smoothsel
