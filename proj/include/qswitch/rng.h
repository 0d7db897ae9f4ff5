// Copyright 2026 The qswitch Authors
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

#ifndef QSWITCH_RNG_H
#define QSWITCH_RNG_H

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace qswitch {

/// SplitMix64 step. Used both to expand a 64-bit seed into xoshiro state and
/// to derive independent sub-seeds.
constexpr uint64_t splitmix64(uint64_t &state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Sub-seed for stream `index` of `seed`. Pure function of both arguments.
constexpr uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t s = seed;
    uint64_t a = splitmix64(s);
    uint64_t t = a ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
    return splitmix64(t);
}

/// xoshiro256** 1.0 (Blackman & Vigna). The four state words are the first
/// four outputs of SplitMix64 started at the seed.
///
/// Derived streams used by the toolkit:
///   uniform01  = (next() >> 11) * 2^-53, in [0, 1)
///   gaussian   = Box-Muller on two uniform01 draws (u1 mapped to (0, 1])
/// Both are fixed here so results do not depend on the standard library's
/// distribution implementations.
class Xoshiro256 {
  public:
    using result_type = uint64_t;

    explicit Xoshiro256(uint64_t seed) {
        uint64_t s = seed;
        for (auto &w : state_) {
            w = splitmix64(s);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~uint64_t{0}; }

    result_type operator()() { return next(); }

    uint64_t next() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal draw. Spare values are not cached, so every call
    /// consumes exactly two 64-bit outputs.
    double gaussian() {
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    static constexpr uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<uint64_t, 4> state_{};
};

}  // namespace qswitch

#endif  // QSWITCH_RNG_H
