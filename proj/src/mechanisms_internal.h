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

#ifndef SMOOTHSEL_MECHANISMS_INTERNAL_H_
#define SMOOTHSEL_MECHANISMS_INTERNAL_H_

#include <cstddef>
#include <span>

namespace smoothsel::internal {

// argmax_r { scores[r] + noise(r) }; the first index wins ties. Every noisy
// argmax mechanism goes through here, and tests drive it with zero noise.
template <typename NoiseFn>
std::size_t NoisyArgmax(std::span<const double> scores, NoiseFn&& noise) {
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t r = 0; r < scores.size(); ++r) {
    const double value = scores[r] + noise(r);
    if (r == 0 || value > best_value) {
      best = r;
      best_value = value;
    }
  }
  return best;
}

}  // namespace smoothsel::internal

#endif  // SMOOTHSEL_MECHANISMS_INTERNAL_H_
