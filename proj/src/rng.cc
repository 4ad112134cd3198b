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

#include "hyperteleport/rng.h"

namespace hyperteleport {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t SplitMix64::next() {
    state_ += kGolden;
    return mix64(state_);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

uint64_t SplitMix64::below(uint64_t bound) {
    // Lemire's multiply-shift; the bias is < bound / 2^64, irrelevant for the
    // tiny bounds used here (qubit choice, Pauli choice).
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
}

uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
    uint64_t s = mix64(master + kGolden * (stream + 1));
    return mix64(s ^ mix64(kGolden * (index + 1) + 0x632BE59BD9B4E019ULL));
}

}  // namespace hyperteleport
