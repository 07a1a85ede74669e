// Copyright 2026 The eoa Authors
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
#include <vector>

#include "eoa/qstate.hpp"

namespace eoa {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex normal (E|z|^2 = 1).
CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
/// Uniformly random unit vector.
std::vector<Complex> randomUnitVector(std::size_t dim, Rng& rng);
/// (G + G^dag) / 2 for Ginibre G.
CMatrix randomHermitian(std::size_t dim, Rng& rng);

MultiState randomPureState(const Register& reg, Rng& rng);
/// G G^dag / Tr with G of shape dim x rank; rank 0 means full rank.
MultiState randomDensity(const Register& reg, Rng& rng, std::size_t rank = 0);

/// Stateless 64-bit mixer used to split a master seed into substreams.
std::uint64_t splitMix64(std::uint64_t x);
std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace eoa
