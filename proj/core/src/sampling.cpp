// Copyright 2026 The telepovm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "telepovm/sampling.hpp"

#include <cmath>
#include <numbers>

namespace telepovm {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(trial),
      static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

PureState haar_qubit(std::mt19937_64& engine) {
  const double weight = uniform01(engine);
  const double phase = 2.0 * std::numbers::pi * uniform01(engine);
  return PureState::normalized(
      {std::sqrt(weight), std::polar(std::sqrt(1.0 - weight), phase)});
}

}  // namespace telepovm
