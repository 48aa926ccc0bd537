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

#ifndef SMOOTHSEL_RNG_H_
#define SMOOTHSEL_RNG_H_

#include <cstdint>
#include <initializer_list>

namespace smoothsel {

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds a list of identifiers into a seed. Used to give every experiment
// cell, trial and mechanism its own reproducible stream.
uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> parts);

// Counter-based random stream: the i-th output is a pure function of
// (key, i), so streams can be split and replayed without shared state.
// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = uint64_t;

  explicit RngStream(uint64_t seed, uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return Mix64(key_ + (++counter_) * kStep); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double UniformPositive() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t Below(uint64_t bound);

  // An independent stream derived from this stream's key and `stream_id`.
  // Does not advance this stream.
  RngStream Split(uint64_t stream_id) const;

  uint64_t counter() const { return counter_; }

 private:
  static constexpr uint64_t kStep = 0x9e3779b97f4a7c15ULL;

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace smoothsel

#endif  // SMOOTHSEL_RNG_H_
