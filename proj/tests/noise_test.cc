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

#include "hyperteleport/noise.h"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "hyperteleport/errors.h"
#include "hyperteleport/hypergraph.h"
#include "oracles.h"

using namespace hyperteleport;

namespace {

const U3Angles kPlus{std::numbers::pi / 2, 0, 0};

}  // namespace

TEST(noise_model, validation) {
    EXPECT_NO_THROW((NoiseModel{0, 1, 0}.validate()));
    EXPECT_THROW((NoiseModel{-0.1, 0, 0}.validate()), ArgumentError);
    EXPECT_THROW((NoiseModel{0, 1.5, 0}.validate()), ArgumentError);
    EXPECT_THROW(noisy_run({Gate::h(0)}, 1, {0, 0, 0}, 0), ArgumentError);
    EXPECT_THROW(noisy_run({Gate::h(1)}, 1, {0, 0, 0}, 10), GateError);
}

TEST(noisy_run, noiseless_matches_sampler) {
    const auto circuit = channel_4q_circuit();
    auto ideal = StateVector::zero(4);
    apply_circuit(ideal, circuit);
    for (uint64_t seed : {0ULL, 5ULL, 123456789ULL}) {
        EXPECT_EQ(noisy_run(circuit, 4, {0, 0, seed}, 4096), sample_shots(ideal, 4096, seed));
    }
}

TEST(noisy_run, deterministic) {
    const auto circuit = teleport_pipeline_circuit(Protocol::Single, std::vector<U3Angles>{kPlus});
    const NoiseModel m{0.1, 0.05, 9};
    EXPECT_EQ(noisy_run(circuit, 4, m, 2000), noisy_run(circuit, 4, m, 2000));
    EXPECT_NE(noisy_run(circuit, 4, m, 2000), noisy_run(circuit, 4, {0.1, 0.05, 10}, 2000));
}

TEST(noisy_run, errors_stay_on_touched_qubits) {
    // Every gate errs, but only qubit 0 is ever touched.
    const auto h = noisy_run({Gate::x(0), Gate::h(0)}, 2, {1.0, 0, 3}, 1000);
    for (const auto& [k, _] : h.counts) EXPECT_EQ(k[1], '0') << k;
    EXPECT_EQ(h.counts.size(), 2u);
}

TEST(noisy_run, full_readout_scramble) {
    const uint64_t shots = 8192;
    const auto h = noisy_run(channel_3q_circuit(), 3, {0, 0.5, 11}, shots);
    const double sigma = std::sqrt(0.25 / shots);
    for (int q = 0; q < 3; ++q) {
        const std::vector<int> keep = {q};
        EXPECT_NEAR(h.marginal(keep).frequency("1"), 0.5, 4 * sigma) << q;
    }
}

TEST(noisy_run, readout_flip_certain) {
    const auto h = noisy_run({}, 2, {0, 1.0, 1}, 50);
    EXPECT_EQ(h.counts, (std::map<std::string, uint64_t>{{"11", 50}}));
}

TEST(pipeline, noiseless_bob_state_is_message) {
    std::mt19937_64 rng(90);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<U3Angles> one = {{angle(rng), angle(rng), angle(rng)}};
        auto s = StateVector::zero(4);
        apply_circuit(s, teleport_pipeline_circuit(Protocol::Single, one));
        const auto bob = reduced_density(s, bob_qubits(Protocol::Single));
        const auto want = theoretical_density(prepared_message(Protocol::Single, one));
        EXPECT_LT(bob.max_abs_diff(want), 1e-12);
        EXPECT_NEAR(fidelity(want, bob).value, 1.0, 1e-10);

        const std::vector<U3Angles> two = {{angle(rng), angle(rng), 0}, {angle(rng), 0, angle(rng)}};
        auto s2 = StateVector::zero(6);
        apply_circuit(s2, teleport_pipeline_circuit(Protocol::Two, two));
        const auto bob2 = reduced_density(s2, bob_qubits(Protocol::Two));
        EXPECT_LT(bob2.max_abs_diff(theoretical_density(prepared_message(Protocol::Two, two))), 1e-12);
    }
    EXPECT_THROW(teleport_pipeline_circuit(Protocol::Two, std::vector<U3Angles>{kPlus}), ArgumentError);
}

TEST(pipeline, noise_degrades_fidelity) {
    const std::vector<U3Angles> prep = {kPlus};
    const auto clean = noisy_teleport_tomography(Protocol::Single, prep, {0, 0, 7}, 8192);
    EXPECT_NEAR(clean.fidelity.value, 1.0, 0.02);
    const auto noisy = noisy_teleport_tomography(Protocol::Single, prep, {0.05, 0, 7}, 8192);
    EXPECT_LT(noisy.fidelity.value, 0.99);
    // Regression value for this seed.
    EXPECT_NEAR(noisy.fidelity.value, 0.86616634697094996, 1e-12);
}

TEST(fidelity_vs_noise, table_shape_and_errors) {
    const std::vector<U3Angles> prep = {kPlus};
    const std::vector<double> grid = {0, 0.05, 0.2};
    const auto rows = fidelity_vs_noise(Protocol::Single, prep, grid, 2048, 1, 2);
    ASSERT_EQ(rows.size(), 3u);
    for (size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].gate_error_prob, grid[i]);
        ASSERT_EQ(rows[i].fidelities.size(), 2u);
        EXPECT_NEAR(rows[i].mean_fidelity, (rows[i].fidelities[0] + rows[i].fidelities[1]) / 2, 1e-15);
    }
    EXPECT_NEAR(rows[0].mean_fidelity, 1.0, 0.02);
    EXPECT_GT(rows[0].mean_fidelity, rows[2].mean_fidelity);
    EXPECT_EQ(rows, fidelity_vs_noise(Protocol::Single, prep, grid, 2048, 1, 2));

    const std::vector<double> unsorted = {0.1, 0.05};
    EXPECT_THROW(fidelity_vs_noise(Protocol::Single, prep, unsorted, 100, 1), ArgumentError);
    EXPECT_THROW(fidelity_vs_noise(Protocol::Single, prep, grid, 100, 1, 0), ArgumentError);
}

TEST(fidelity_vs_noise, two_qubit_protocol) {
    const std::vector<U3Angles> prep = {kPlus, kPlus};
    const std::vector<double> grid = {0, 0.1};
    const auto rows = fidelity_vs_noise(Protocol::Two, prep, grid, 2048, 4);
    EXPECT_NEAR(rows[0].mean_fidelity, 1.0, 0.02);
    EXPECT_LT(rows[1].mean_fidelity, rows[0].mean_fidelity);
}

TEST(spearman, known_values) {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> down = {9, 7, 4, 2, 1};
    const std::vector<double> up = {1, 3, 5, 8, 100};
    EXPECT_NEAR(spearman_correlation(x, down), -1.0, 1e-15);
    EXPECT_NEAR(spearman_correlation(x, up), 1.0, 1e-15);
    // Ties get average ranks: y ranks 1, 2.5, 2.5, 4, 5.
    const std::vector<double> tied = {1, 2, 2, 3, 4};
    EXPECT_NEAR(spearman_correlation(x, tied), 0.9746794344808963, 1e-12);
    const std::vector<double> flat = {1, 1, 1, 1, 1};
    EXPECT_EQ(spearman_correlation(x, flat), 0.0);
    EXPECT_THROW(spearman_correlation(x, std::vector<double>{1, 2}), ArgumentError);
}
