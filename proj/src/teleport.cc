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

#include "hyperteleport/teleport.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "hyperteleport/errors.h"
#include "hyperteleport/hypergraph.h"
#include "hyperteleport/rng.h"

namespace hyperteleport {

namespace {

using enum CorrectionOp;

struct TableRow {
    std::string_view outcome;
    CorrectionRule ops;
};

// Bob's operation for each of Alice's outcomes, single-qubit protocol.
const std::array<TableRow, 4>& single_table() {
    static const std::array<TableRow, 4> table{{
        {"000", {I}},
        {"100", {Z}},
        {"010", {X}},
        {"110", {ZX}},
    }};
    return table;
}

// Two-qubit protocol, operations on (b1, b2).
const std::array<TableRow, 16>& two_table() {
    static const std::array<TableRow, 16> table{{
        {"0000", {I, I}},
        {"0001", {I, X}},
        {"0010", {X, I}},
        {"0011", {X, X}},
        {"0100", {I, Z}},
        {"0101", {I, ZX}},
        {"0110", {X, Z}},
        {"0111", {X, ZX}},
        {"1000", {Z, I}},
        {"1001", {Z, X}},
        {"1010", {ZX, I}},
        {"1011", {ZX, X}},
        {"1100", {Z, Z}},
        {"1101", {Z, ZX}},
        {"1110", {ZX, Z}},
        {"1111", {ZX, ZX}},
    }};
    return table;
}

void apply_correction(StateVector& bob, const CorrectionRule& rule) {
    for (size_t i = 0; i < rule.size(); ++i) {
        const int q = static_cast<int>(i);
        switch (rule[i]) {
            case I: break;
            case X: apply_gate(bob, Gate::x(q)); break;
            case Z: apply_gate(bob, Gate::z(q)); break;
            case ZX:
                apply_gate(bob, Gate::x(q));
                apply_gate(bob, Gate::z(q));
                break;
        }
    }
}

void check_norm(double sq) {
    if (std::abs(sq - 1.0) > kNormTolerance) {
        throw ArgumentError("message is not normalized: squared norm " + std::to_string(sq));
    }
}

std::vector<TeleportOutcome> run_protocol(Protocol protocol, StateVector joint, const TeleportMode& mode) {
    apply_circuit(joint, protocol_circuit(protocol, false));
    const auto alice = alice_qubits(protocol);
    const int n_alice = static_cast<int>(alice.size());

    std::vector<TeleportOutcome> branches;
    for (uint64_t m = 0; m < (uint64_t{1} << n_alice); ++m) {
        const std::string bits = basis_label(m, n_alice);
        Projection p = project_outcome(joint, alice, bits);
        if (p.probability < 1e-14) continue;
        TeleportOutcome out{bits, p.probability, StateVector::normalized(std::move(p.amplitudes)),
                            StateVector::zero(1), correction_lookup(protocol, bits)};
        out.bob_state_corrected = out.bob_state_raw;
        apply_correction(out.bob_state_corrected, out.applied_correction);
        branches.push_back(std::move(out));
    }
    // basis_label enumeration is already lexicographic.

    double total = 0;
    for (const auto& b : branches) total += b.probability;
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvariantError("branch probabilities sum to " + std::to_string(total));
    }

    if (const auto* sample = std::get_if<SampleBranch>(&mode)) {
        SplitMix64 rng(derive_seed(sample->seed, streams::kBranch, 0));
        const double u = rng.uniform() * total;
        double acc = 0;
        for (auto& b : branches) {
            acc += b.probability;
            if (u < acc) return {std::move(b)};
        }
        return {std::move(branches.back())};
    }
    return branches;
}

}  // namespace

// ---------------------------------------------------------------------------

SingleQubitMessage SingleQubitMessage::from_u3(const U3Angles& angles) {
    StateVector s = applied(StateVector::zero(1), Gate::u3(0, angles));
    return {s[0], s[1]};
}

void SingleQubitMessage::validate() const { check_norm(std::norm(alpha) + std::norm(beta)); }

StateVector SingleQubitMessage::state() const {
    validate();
    return StateVector::from_amplitudes({alpha, beta});
}

U3Angles SingleQubitMessage::to_u3() const {
    validate();
    return {2.0 * std::atan2(std::abs(beta), std::abs(alpha)), std::arg(beta) - std::arg(alpha), 0.0};
}

TwoQubitMessage TwoQubitMessage::from_u3_pair(const U3Angles& first, const U3Angles& second) {
    const auto a = SingleQubitMessage::from_u3(first);
    const auto b = SingleQubitMessage::from_u3(second);
    return {a.alpha * b.alpha, a.alpha * b.beta, a.beta * b.alpha, a.beta * b.beta};
}

void TwoQubitMessage::validate() const {
    check_norm(std::norm(alpha) + std::norm(beta) + std::norm(gamma) + std::norm(delta));
}

StateVector TwoQubitMessage::state() const {
    validate();
    return StateVector::from_amplitudes({alpha, beta, gamma, delta});
}

std::string_view to_string(CorrectionOp op) {
    switch (op) {
        case I: return "I";
        case X: return "X";
        case Z: return "Z";
        case ZX: return "ZX";
    }
    return "?";
}

CorrectionRule correction_lookup(Protocol protocol, std::string_view alice_bits) {
    auto find = [&](const auto& table) -> CorrectionRule {
        for (const auto& row : table) {
            if (row.outcome == alice_bits) return row.ops;
        }
        throw LookupError("no correction for outcome '" + std::string(alice_bits) + "'");
    };
    return protocol == Protocol::Single ? find(single_table()) : find(two_table());
}

std::vector<int> alice_qubits(Protocol protocol) {
    return protocol == Protocol::Single ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 1, 2, 3};
}

std::vector<int> bob_qubits(Protocol protocol) {
    return protocol == Protocol::Single ? std::vector<int>{3} : std::vector<int>{4, 5};
}

int joint_qubit_count(Protocol protocol) { return protocol == Protocol::Single ? 4 : 6; }

Circuit protocol_circuit(Protocol protocol, bool deferred) {
    Circuit c;
    if (protocol == Protocol::Single) {
        // a=0, a1=1, a2=2, b=3
        c = {Gate::cnot(0, 1), Gate::cnot(0, 2), Gate::h(0), Gate::h(2)};
        if (deferred) {
            c.push_back(Gate::cnot(1, 3));
            c.push_back(Gate::cz(0, 3));
        }
    } else {
        // 1=0, 2=1, a1=2, a2=3, b1=4, b2=5
        c = {Gate::cnot(0, 2), Gate::cnot(1, 3), Gate::h(0), Gate::h(1)};
        if (deferred) {
            c.push_back(Gate::cnot(2, 4));
            c.push_back(Gate::cnot(3, 5));
            c.push_back(Gate::cz(0, 4));
            c.push_back(Gate::cz(1, 5));
        }
    }
    return c;
}

StateVector joint_input(const SingleQubitMessage& msg) { return msg.state().tensor(build_channel_3q().state); }

StateVector joint_input(const TwoQubitMessage& msg) { return msg.state().tensor(build_channel_4q().state); }

std::vector<TeleportOutcome> teleport_single(const SingleQubitMessage& msg, const TeleportMode& mode) {
    return run_protocol(Protocol::Single, joint_input(msg), mode);
}

std::vector<TeleportOutcome> teleport_two(const TwoQubitMessage& msg, const TeleportMode& mode) {
    return run_protocol(Protocol::Two, joint_input(msg), mode);
}

DensityMatrix deferred_bob_density(const SingleQubitMessage& msg) {
    StateVector s = joint_input(msg);
    apply_circuit(s, protocol_circuit(Protocol::Single, true));
    return reduced_density(s, bob_qubits(Protocol::Single));
}

DensityMatrix deferred_bob_density(const TwoQubitMessage& msg) {
    StateVector s = joint_input(msg);
    apply_circuit(s, protocol_circuit(Protocol::Two, true));
    return reduced_density(s, bob_qubits(Protocol::Two));
}

ShotHistogram alice_histogram(const StateVector& joint_input, Protocol protocol, uint64_t shots, uint64_t seed) {
    if (joint_input.num_qubits() != joint_qubit_count(protocol)) {
        throw ArgumentError("joint input has the wrong qubit count for this protocol");
    }
    StateVector s = joint_input;
    apply_circuit(s, protocol_circuit(protocol, false));
    return sample_shots(s, shots, seed).marginal(alice_qubits(protocol));
}

ProtocolTrace trace_single(const SingleQubitMessage& msg) {
    ProtocolTrace trace;
    StateVector s = joint_input(msg);
    trace.push_back({"input", s});
    apply_gate(s, Gate::cnot(0, 1));
    apply_gate(s, Gate::cnot(0, 2));
    trace.push_back({"after_cnots", s});
    apply_gate(s, Gate::h(0));
    trace.push_back({"after_h_a", s});
    apply_gate(s, Gate::h(2));
    trace.push_back({"after_h_a2", s});
    return trace;
}

ProtocolTrace trace_two(const TwoQubitMessage& msg) {
    ProtocolTrace trace;
    StateVector s = joint_input(msg);
    trace.push_back({"input", s});
    apply_gate(s, Gate::cnot(0, 2));
    apply_gate(s, Gate::cnot(1, 3));
    trace.push_back({"after_cnots", s});
    apply_gate(s, Gate::h(0));
    apply_gate(s, Gate::h(1));
    trace.push_back({"after_hadamards", s});
    return trace;
}

}  // namespace hyperteleport
