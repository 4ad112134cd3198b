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
 * Dense statevector simulation.
 *
 * Bit order: qubit 0 is the leftmost symbol of a ket or bit string, i.e. the
 * most significant bit of the basis index. On n qubits, qubit q corresponds to
 * the mask 1 << (n - 1 - q), so "|100>" is basis index 4.
 */

#ifndef HYPERTELEPORT_STATEVEC_H
#define HYPERTELEPORT_STATEVEC_H

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperteleport/density_matrix.h"

namespace hyperteleport {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-12;

/// Basis-index mask of qubit `q` in an `n`-qubit register.
constexpr uint64_t qubit_mask(int q, int n) { return uint64_t{1} << (n - 1 - q); }

/// "0110"-style label of a basis index.
std::string basis_label(uint64_t index, int n);

/// Inverse of basis_label. Throws ArgumentError on characters outside {0,1}.
uint64_t basis_index(std::string_view bits);

class StateVector {
   public:
    /// |0...0> on n qubits. Throws SizeError unless 1 <= n <= kMaxQubits.
    static StateVector zero(int n);

    /// Takes ownership of the amplitudes. Length must be a power of two
    /// (>= 2) and the norm must be 1 within kNormTolerance.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    /// As from_amplitudes, but rescales to unit norm first. Throws on a zero
    /// vector.
    static StateVector normalized(std::vector<Amplitude> amplitudes);

    int num_qubits() const { return n_; }
    uint64_t dim() const { return amps_.size(); }

    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> mutable_amplitudes() { return amps_; }

    Amplitude operator[](uint64_t index) const { return amps_[index]; }
    Amplitude amplitude(std::string_view bits) const;

    double norm() const;

    /// this (x) other, with `this` on the leftmost qubits.
    StateVector tensor(const StateVector& other) const;

    /// Copy multiplied by the phase that makes the first amplitude with
    /// |a| > 1e-12 real and positive.
    StateVector phase_fixed() const;

    friend bool operator==(const StateVector&, const StateVector&) = default;

   private:
    StateVector(int n, std::vector<Amplitude> amps) : n_(n), amps_(std::move(amps)) {}

    int n_;
    std::vector<Amplitude> amps_;
};

/// <a|b>. Throws ArgumentError on size mismatch.
Amplitude inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2.
double state_fidelity(const StateVector& a, const StateVector& b);

/// Largest |a_i - b_i| after phase-fixing both states.
double max_amplitude_diff_up_to_phase(const StateVector& a, const StateVector& b);

// ---------------------------------------------------------------------------
// Gates.

using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

enum class GateKind { H, X, Y, Z, U3, Controlled };

enum class ControlPolarity {
    Closed,  ///< fires on |1>
    Open,    ///< fires on |0>
};

struct Control {
    int qubit;
    ControlPolarity polarity = ControlPolarity::Closed;
    friend bool operator==(const Control&, const Control&) = default;
};

struct U3Angles {
    double theta = 0;
    double phi = 0;
    double lambda = 0;
    friend bool operator==(const U3Angles&, const U3Angles&) = default;
};

/// One gate of the supported set. Controlled gates carry an X or Z base
/// acting on `target`; every other kind acts on `target` alone.
struct Gate {
    GateKind kind = GateKind::H;
    int target = 0;
    U3Angles angles{};
    GateKind base = GateKind::X;
    std::vector<Control> controls{};

    static Gate h(int q) { return {GateKind::H, q}; }
    static Gate x(int q) { return {GateKind::X, q}; }
    static Gate y(int q) { return {GateKind::Y, q}; }
    static Gate z(int q) { return {GateKind::Z, q}; }
    static Gate u3(int q, double theta, double phi, double lambda) {
        return {GateKind::U3, q, {theta, phi, lambda}};
    }
    static Gate u3(int q, U3Angles a) { return {GateKind::U3, q, a}; }
    /// S^dagger = diag(1, -i), written as U3(0, 0, -pi/2).
    static Gate sdg(int q);
    static Gate controlled(std::vector<Control> controls, GateKind base, int target) {
        return {GateKind::Controlled, target, {}, base, std::move(controls)};
    }
    static Gate cnot(int c, int t) { return controlled({{c}}, GateKind::X, t); }
    static Gate cz(int c, int t) { return controlled({{c}}, GateKind::Z, t); }
    static Gate ccnot(int c1, int c2, int t) { return controlled({{c1}, {c2}}, GateKind::X, t); }
    static Gate ccz(int c1, int c2, int t) { return controlled({{c1}, {c2}}, GateKind::Z, t); }

    /// Every qubit the gate touches: controls first, target last.
    std::vector<int> qubits() const;

    std::string to_string() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

using Circuit = std::vector<Gate>;

/// The 2x2 matrix acting on the target (the base matrix for controlled gates).
/// U3(t, p, l) = [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]].
Matrix2 target_matrix(const Gate& gate);

/// Throws GateError if any index is >= n or repeated, or the kind/base
/// combination is unsupported.
void validate_gate(const Gate& gate, int n);

void apply_gate(StateVector& state, const Gate& gate);
void apply_circuit(StateVector& state, const Circuit& circuit);

/// Value-returning form of apply_gate.
StateVector applied(StateVector state, const Gate& gate);

/// |+>^n. Throws SizeError unless 1 <= n <= kMaxQubits.
StateVector plus_state(int n);

// ---------------------------------------------------------------------------
// Measurement and observables.

struct ShotHistogram {
    int n_qubits = 0;
    std::map<std::string, uint64_t> counts;  ///< only nonzero entries
    uint64_t shots = 0;
    uint64_t seed = 0;

    /// Checks sum(counts) == shots and key shape. Throws InvariantError.
    void validate() const;

    double frequency(const std::string& key) const;

    /// Histogram over the listed qubits (in the listed order).
    ShotHistogram marginal(std::span<const int> keep) const;

    friend bool operator==(const ShotHistogram&, const ShotHistogram&) = default;
};

/// Cumulative |a_i|^2 table for inverse-transform sampling.
class BasisSampler {
   public:
    explicit BasisSampler(const StateVector& state);
    /// Basis index for a uniform draw u in [0, 1).
    uint64_t operator()(double u) const;

   private:
    std::vector<double> cumulative_;
};

/// Draws `shots` i.i.d. computational-basis outcomes. Shot i uses a
/// SplitMix64 stream seeded with derive_seed(seed, streams::kMeasurement, i),
/// so the histogram does not depend on `threads`.
/// Throws ArgumentError when shots == 0.
ShotHistogram sample_shots(const StateVector& state, uint64_t shots, uint64_t seed, int threads = 1);

/// <state| P_0 (x) ... (x) P_{n-1} |state> for labels over {I,X,Y,Z}.
double expectation_pauli(const StateVector& state, std::string_view labels);

/// Applies the Pauli string in place (no global phase dropped: Y = [[0,-i],[i,0]]).
void apply_pauli_string(StateVector& state, std::string_view labels);

/// Partial trace over every qubit not in `keep`. The kept qubits appear in the
/// listed order. Throws ArgumentError on an empty, repeated or invalid list.
DensityMatrix reduced_density(const StateVector& state, std::span<const int> keep);

/// Given a state whose qubits `measured` are fixed to `bits`, returns the
/// conditional state of the remaining qubits (in increasing order) and the
/// probability of that outcome. Probability 0 yields a zero-filled `state`.
struct Projection {
    double probability = 0;
    std::vector<Amplitude> amplitudes;
};
Projection project_outcome(const StateVector& state, std::span<const int> measured, std::string_view bits);

}  // namespace hyperteleport

#endif
