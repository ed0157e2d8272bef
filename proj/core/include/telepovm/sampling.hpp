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

#pragma once

#include <cstdint>
#include <random>

#include "telepovm/states.hpp"

namespace telepovm {

/**
 * Engine for one Monte Carlo trial, keyed by (seed, trial). Every trial owns
 * an independent stream, so results do not depend on execution order.
 * Mersenne Twister output and std::seed_seq are fully specified by the
 * standard, which keeps streams identical across toolchains.
 */
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(std::mt19937_64& engine);

/// Haar-random qubit (up to global phase): |alpha|^2 ~ U(0,1), relative
/// phase ~ U(0, 2 pi).
PureState haar_qubit(std::mt19937_64& engine);

}  // namespace telepovm
