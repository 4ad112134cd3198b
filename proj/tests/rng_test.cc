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

#include <gtest/gtest.h>

#include <set>

using namespace hyperteleport;

TEST(splitmix64, reference_sequence) {
    // Published SplitMix64 outputs for seed 1234567.
    SplitMix64 rng(1234567);
    EXPECT_EQ(rng.next(), 6457827717110365317ULL);
    EXPECT_EQ(rng.next(), 3203168211198807973ULL);
    EXPECT_EQ(rng.next(), 9817491932198370423ULL);
}

TEST(splitmix64, uniform_range) {
    SplitMix64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(splitmix64, below_covers_range) {
    SplitMix64 rng(3);
    std::set<uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const uint64_t v = rng.below(3);
        ASSERT_LT(v, 3u);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 3u);
}

TEST(derive_seed, deterministic_and_distinct) {
    EXPECT_EQ(derive_seed(5, 1, 2), derive_seed(5, 1, 2));
    std::set<uint64_t> seen;
    for (uint64_t stream = 0; stream < 8; ++stream) {
        for (uint64_t index = 0; index < 64; ++index) seen.insert(derive_seed(42, stream, index));
    }
    EXPECT_EQ(seen.size(), 8u * 64u);
    EXPECT_NE(derive_seed(1, 1, 0), derive_seed(2, 1, 0));
}
