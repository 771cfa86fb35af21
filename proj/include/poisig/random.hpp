// Copyright 2026 The poisig Authors.
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

#ifndef POISIG_RANDOM_HPP_
#define POISIG_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace poisig {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of stream `index` under `master`. Streams depend only on
// (master, index, lane), never on how work is split across threads.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    std::uint64_t lane = 0) noexcept {
  return mix64(mix64(mix64(master) ^ index) ^ (lane * 0xd1b54a32d192ed03ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index, std::uint64_t lane = 0) {
  return Rng(derive_seed(master, index, lane));
}

}  // namespace poisig

#endif  // POISIG_RANDOM_HPP_
