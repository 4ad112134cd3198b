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

/**
 * @file
 * Monte Carlo Pauli-error trajectories.
 *
 * After every gate, with probability gate_error_prob, one uniformly chosen
 * non-identity Pauli hits one uniformly chosen qubit the gate touched. Every
 * measured bit is then flipped with probability readout_flip_prob.
 *
 * Random streams per shot s (see rng.h):
 *   measurement  derive_seed(seed, kMeasurement, s)   same as sample_shots
 *   gate errors  derive_seed(seed, kGateNoise, s)
 *   readout      derive_seed(seed, kReadoutNoise, s)
 * so a noiseless model reproduces sample_shots exactly.
 */

#ifndef HYPERTELEPORT_NOISE_H
#define HYPERTELEPORT_NOISE_H

#include <cstdint>
#include <span>
#include <vector>

#include "hyperteleport/statevec.h"
#include "hyperteleport/teleport.h"
#include "hyperteleport/tomography.h"

namespace hyperteleport {

struct NoiseModel {
    double gate_error_prob = 0;
    double readout_flip_prob = 0;
    uint64_t seed = 0;

    /// Throws ArgumentError unless both probabilities lie in [0, 1].
    void validate() const;

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Runs `circuit` from |0...0> on n qubits, `shots` times.
ShotHistogram noisy_run(const Circuit& circuit, int n, const NoiseModel& noise, uint64_t shots);

/// Same, starting from an arbitrary (noise-free) initial state.
ShotHistogram noisy_run(const Circuit& circuit, const StateVector& initial, const NoiseModel& noise, uint64_t shots);

/// Message preparation (U3 on |0> per message qubit), channel preparation
/// and the deferred-measurement protocol, as one circuit from |0...0>.
/// `prep` holds one angle triple for Single and two for Two.
Circuit teleport_pipeline_circuit(Protocol protocol, std::span<const U3Angles> prep);

/// Message state produced by `prep`.
StateVector prepared_message(Protocol protocol, std::span<const U3Angles> prep);

struct PipelineResult {
    DensityMatrix reconstructed;
    FidelityReport fidelity;
};

/// Teleport under noise, tomograph Bob's qubits from sampled histograms and
/// score against the message. Settings use setting_seed(noise.seed, i).
PipelineResult noisy_teleport_tomography(Protocol protocol, std::span<const U3Angles> prep, const NoiseModel& noise,
                                         uint64_t shots);

struct SweepRow {
    double gate_error_prob = 0;
    double mean_fidelity = 0;
    std::vector<double> fidelities;  ///< one per repeat

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// For each p of the (ascending) grid, `repeats` independent pipeline runs
/// with seeds derive_seed(seed, kRepeat, r). Throws ArgumentError on an
/// unsorted grid or repeats == 0.
std::vector<SweepRow> fidelity_vs_noise(Protocol protocol, std::span<const U3Angles> prep,
                                        std::span<const double> grid, uint64_t shots, uint64_t seed,
                                        int repeats = 1, double readout_flip_prob = 0);

/// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace hyperteleport

#endif
