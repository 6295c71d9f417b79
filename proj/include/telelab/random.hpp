// Copyright 2026 The Telelab Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace telelab {

/// Uniform double in [0, 1) addressed by (seed, draw_index).
///
/// Each draw seeds a fresh std::mt19937_64 through std::seed_seq with the
/// four 32-bit halves of seed and draw_index, takes the first 64-bit output
/// and keeps its top 53 bits. Both engine and seed_seq are fully specified
/// by the standard, so streams are stable across runs and toolchains.
inline double uniform_draw(std::uint64_t seed, std::uint64_t draw_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(draw_index), static_cast<std::uint32_t>(draw_index >> 32)};
    std::mt19937_64 engine(seq);
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace telelab
