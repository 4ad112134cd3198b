// Copyright 2026 The hyperteleport Authors
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

#ifndef HYPERTELEPORT_RNG_H
#define HYPERTELEPORT_RNG_H

#include <cstdint>

namespace hyperteleport {

/// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
/// generators", OOPSLA 2014). Chosen because its output is fully specified
/// (unlike the std:: distributions) and seeding is O(1), which makes one
/// independent stream per shot affordable.
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next();

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform();

    /// Uniform integer in [0, bound). bound must be nonzero.
    uint64_t below(uint64_t bound);

   private:
    uint64_t state_;
};

/// The SplitMix64 output finalizer applied to a single word.
uint64_t mix64(uint64_t x);

/// Seed for an independent sub-stream, addressed by (stream, index).
///
/// Every random consumer in the library draws from a generator seeded with
/// derive_seed(master, stream, index), where `index` is a shot number,
/// measurement-setting number, or repeat number. Because the mapping is a pure
/// function, work can be split across threads in any way without changing the
/// result.
uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index);

/// Stream tags. Fixed values: changing one changes every recorded histogram.
namespace streams {
inline constexpr uint64_t kMeasurement = 1;
inline constexpr uint64_t kGateNoise = 2;
inline constexpr uint64_t kReadoutNoise = 3;
inline constexpr uint64_t kTomographySetting = 4;
inline constexpr uint64_t kBranch = 5;
inline constexpr uint64_t kRepeat = 6;
}  // namespace streams

}  // namespace hyperteleport

#endif
