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
#include "eoa/sampling.hpp"

#include <cmath>

namespace eoa {

CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix g(rows, cols);
  for (auto& z : g.entries()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return g;
}

std::vector<Complex> randomUnitVector(std::size_t dim, Rng& rng) {
  const CMatrix g = ginibre(dim, 1, rng);
  const double norm = g.frobeniusNorm();
  std::vector<Complex> v(g.entries().begin(), g.entries().end());
  for (auto& z : v) z /= norm;
  return v;
}

CMatrix randomHermitian(std::size_t dim, Rng& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

MultiState randomPureState(const Register& reg, Rng& rng) {
  const std::vector<Complex> v = randomUnitVector(reg.totalDim(), rng);
  return MultiState::fromAmplitudes(reg, v);
}

MultiState randomDensity(const Register& reg, Rng& rng, std::size_t rank) {
  const std::size_t d = reg.totalDim();
  const CMatrix g = ginibre(d, rank == 0 ? d : rank, rng);
  CMatrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  rho = 0.5 * (rho + rho.adjoint());
  return MultiState::trusted(reg, std::move(rho));
}

std::uint64_t splitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitMix64(splitMix64(splitMix64(master) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
}

}  // namespace eoa
