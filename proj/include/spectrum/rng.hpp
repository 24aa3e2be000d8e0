// Copyright 2026 The Spectrum Auction Authors.
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

namespace spectrum {

/// All randomness comes from std::mt19937_64, whose output sequence is fixed
/// by the C++ standard. The helpers below avoid the standard distributions,
/// whose algorithms vary between library implementations, so seeded runs
/// replay bit-exactly across platforms.
using Engine = std::mt19937_64;

/// SplitMix64 finaliser; derives independent child seeds from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform_unit(Engine& engine);

/// Uniform double in [lo, hi).
double uniform_real(Engine& engine, double lo, double hi);

/// Uniform integer in [0, bound) by rejection sampling; bound must be > 0.
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound);

/// True with probability p.
bool bernoulli(Engine& engine, double p);

}  // namespace spectrum
