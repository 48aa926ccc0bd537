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

namespace smoothsel {

uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> parts) {
  uint64_t h = Mix64(seed ^ 0x5bd1e9955bd1e995ULL);
  for (uint64_t part : parts) {
    h = Mix64(h ^ Mix64(part + 0x632be59bd9b4e019ULL));
  }
  return h;
}

RngStream::RngStream(uint64_t seed, uint64_t stream)
    : key_(DeriveSeed(seed, {stream})) {}

uint64_t RngStream::Below(uint64_t bound) {
  // Rejection keeps the result exactly uniform.
  const uint64_t limit = max() - max() % bound;
  uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return x % bound;
}

RngStream RngStream::Split(uint64_t stream_id) const {
  return RngStream(key_, stream_id);
}

}  // namespace smoothsel
