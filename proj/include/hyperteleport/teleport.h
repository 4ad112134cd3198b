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
 * Teleportation of one qubit over the 3-qubit hypergraph channel and of two
 * qubits over the 4-qubit channel.
 *
 * Register layouts (qubit 0 leftmost):
 *   single: a, a1, a2, b            Alice measures a, a1, a2.
 *   two:    1, 2, a1, a2, b1, b2    Alice measures 1, 2, a1, a2.
 */

#ifndef HYPERTELEPORT_TELEPORT_H
#define HYPERTELEPORT_TELEPORT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperteleport/statevec.h"

namespace hyperteleport {

enum class Protocol { Single, Two };

struct SingleQubitMessage {
    Amplitude alpha = 1;
    Amplitude beta = 0;

    /// U3(t, p, l)|0>.
    static SingleQubitMessage from_u3(const U3Angles& angles);

    /// Throws ArgumentError unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
    void validate() const;
    StateVector state() const;
    /// Angles with U3(angles)|0> equal to this message up to global phase.
    U3Angles to_u3() const;
};

struct TwoQubitMessage {
    Amplitude alpha = 1;
    Amplitude beta = 0;
    Amplitude gamma = 0;
    Amplitude delta = 0;

    /// (U3(first)|0>) (x) (U3(second)|0>). Only product states are reachable.
    static TwoQubitMessage from_u3_pair(const U3Angles& first, const U3Angles& second);

    void validate() const;
    StateVector state() const;
};

/// One Pauli correction on one of Bob's qubits. ZX means X first, then Z.
enum class CorrectionOp { I, X, Z, ZX };

std::string_view to_string(CorrectionOp op);

/// One entry per Bob qubit, in Bob-qubit order.
using CorrectionRule = std::vector<CorrectionOp>;

/// Bob's operations for Alice's outcome, read from the protocol's
/// correction table. Single: 3 bits (a a1 a2) with a2 = 0. Two: 4 bits
/// (m1 m2 m3 m4). Throws LookupError for any other string.
CorrectionRule correction_lookup(Protocol protocol, std::string_view alice_bits);

struct TeleportOutcome {
    std::string alice_bits;
    double probability = 0;
    StateVector bob_state_raw;
    StateVector bob_state_corrected;
    CorrectionRule applied_correction;
};

struct EnumerateAll {};
struct SampleBranch {
    uint64_t seed = 0;
};
using TeleportMode = std::variant<EnumerateAll, SampleBranch>;

/// Runs the protocol on message (x) channel. EnumerateAll returns every
/// outcome with nonzero probability, sorted by bit string; SampleBranch
/// returns one collapsed branch. Throws ArgumentError on an unnormalized
/// message.
std::vector<TeleportOutcome> teleport_single(const SingleQubitMessage& msg, const TeleportMode& mode);
std::vector<TeleportOutcome> teleport_two(const TwoQubitMessage& msg, const TeleportMode& mode);

/// Alice's entangling gates: CNOTs then Hadamards. With `deferred`, the
/// classically controlled corrections are appended as quantum-controlled
/// CX and CZ gates (X-type first), so measuring Alice afterwards leaves Bob
/// holding the message in every branch.
Circuit protocol_circuit(Protocol protocol, bool deferred);

/// Qubit indices in the joint register.
std::vector<int> alice_qubits(Protocol protocol);
std::vector<int> bob_qubits(Protocol protocol);
int joint_qubit_count(Protocol protocol);

/// message (x) channel, before Alice acts.
StateVector joint_input(const SingleQubitMessage& msg);
StateVector joint_input(const TwoQubitMessage& msg);

/// Bob's reduced density matrix after running the deferred-measurement
/// circuit (no measurement, no post-selection).
DensityMatrix deferred_bob_density(const SingleQubitMessage& msg);
DensityMatrix deferred_bob_density(const TwoQubitMessage& msg);

/// Samples Alice's measurement record over `shots` runs of the (ideal)
/// protocol. Keys are Alice's bits.
ShotHistogram alice_histogram(const StateVector& joint_input, Protocol protocol, uint64_t shots, uint64_t seed);

struct ProtocolStage {
    std::string label;
    StateVector state;
};
using ProtocolTrace = std::vector<ProtocolStage>;

/// Stages: "input", "after_cnots", "after_h_a", "after_h_a2".
ProtocolTrace trace_single(const SingleQubitMessage& msg);

/// Stages: "input", "after_cnots", "after_hadamards".
ProtocolTrace trace_two(const TwoQubitMessage& msg);

}  // namespace hyperteleport

#endif
