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

#include "hyperteleport/statevec.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "hyperteleport/errors.h"
#include "hyperteleport/rng.h"

namespace hyperteleport {

namespace {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw SizeError("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
}

int log2_exact(uint64_t d) {
    if (d < 2 || (d & (d - 1)) != 0) {
        throw SizeError("amplitude count " + std::to_string(d) + " is not a power of two >= 2");
    }
    return std::countr_zero(d);
}

/// Inserts a zero bit at position `bit` of k.
inline uint64_t insert_zero(uint64_t k, uint64_t bit_mask) {
    const uint64_t low = k & (bit_mask - 1);
    return ((k - low) << 1) | low;
}

}  // namespace

std::string basis_label(uint64_t index, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int q = 0; q < n; ++q) {
        if (index & qubit_mask(q, n)) s[static_cast<size_t>(q)] = '1';
    }
    return s;
}

uint64_t basis_index(std::string_view bits) {
    if (bits.empty() || bits.size() > 63) {
        throw ArgumentError("bit string length out of range");
    }
    uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ArgumentError("bit string may only contain 0 and 1: " + std::string(bits));
        }
        index = (index << 1) | static_cast<uint64_t>(c - '0');
    }
    return index;
}

// ---------------------------------------------------------------------------

StateVector StateVector::zero(int n) {
    check_qubit_count(n);
    std::vector<Amplitude> amps(uint64_t{1} << n);
    amps[0] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const int n = log2_exact(amplitudes.size());
    check_qubit_count(n);
    StateVector s(n, std::move(amplitudes));
    if (std::abs(s.norm() - 1.0) > kNormTolerance) {
        throw ArgumentError("state is not normalized (norm " + std::to_string(s.norm()) + ")");
    }
    return s;
}

StateVector StateVector::normalized(std::vector<Amplitude> amplitudes) {
    const int n = log2_exact(amplitudes.size());
    check_qubit_count(n);
    double sq = 0;
    for (const auto& a : amplitudes) sq += std::norm(a);
    if (sq == 0) {
        throw ArgumentError("cannot normalize the zero vector");
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& a : amplitudes) a *= inv;
    return StateVector(n, std::move(amplitudes));
}

Amplitude StateVector::amplitude(std::string_view bits) const {
    if (bits.size() != static_cast<size_t>(n_)) {
        throw ArgumentError("bit string length does not match qubit count");
    }
    return amps_[basis_index(bits)];
}

double StateVector::norm() const {
    double sq = 0;
    for (const auto& a : amps_) sq += std::norm(a);
    return std::sqrt(sq);
}

StateVector StateVector::tensor(const StateVector& other) const {
    check_qubit_count(n_ + other.n_);
    std::vector<Amplitude> out(amps_.size() * other.amps_.size());
    for (size_t i = 0; i < amps_.size(); ++i) {
        for (size_t j = 0; j < other.amps_.size(); ++j) {
            out[i * other.amps_.size() + j] = amps_[i] * other.amps_[j];
        }
    }
    return StateVector(n_ + other.n_, std::move(out));
}

StateVector StateVector::phase_fixed() const {
    StateVector out = *this;
    for (const auto& a : amps_) {
        if (std::abs(a) > 1e-12) {
            const Amplitude phase = std::conj(a) / std::abs(a);
            for (auto& b : out.amps_) b *= phase;
            break;
        }
    }
    return out;
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw ArgumentError("inner product of states with different qubit counts");
    }
    Amplitude acc = 0;
    for (uint64_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double state_fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

double max_amplitude_diff_up_to_phase(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw ArgumentError("cannot compare states with different qubit counts");
    }
    const StateVector pa = a.phase_fixed();
    const StateVector pb = b.phase_fixed();
    double worst = 0;
    for (uint64_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(pa[i] - pb[i]));
    return worst;
}

// ---------------------------------------------------------------------------

Gate Gate::sdg(int q) { return u3(q, 0.0, 0.0, -std::numbers::pi / 2); }

std::vector<int> Gate::qubits() const {
    std::vector<int> qs;
    qs.reserve(controls.size() + 1);
    for (const auto& c : controls) qs.push_back(c.qubit);
    qs.push_back(target);
    return qs;
}

std::string Gate::to_string() const {
    auto kind_name = [](GateKind k) -> std::string {
        switch (k) {
            case GateKind::H: return "H";
            case GateKind::X: return "X";
            case GateKind::Y: return "Y";
            case GateKind::Z: return "Z";
            case GateKind::U3: return "U3";
            case GateKind::Controlled: return "C";
        }
        return "?";
    };
    std::ostringstream os;
    if (kind == GateKind::Controlled) {
        os << std::string(controls.size(), 'C') << kind_name(base) << "(";
        for (const auto& c : controls) os << (c.polarity == ControlPolarity::Open ? "~" : "") << c.qubit << ",";
        os << "->" << target << ")";
    } else if (kind == GateKind::U3) {
        os << "U3(" << angles.theta << "," << angles.phi << "," << angles.lambda << ") " << target;
    } else {
        os << kind_name(kind) << " " << target;
    }
    return os.str();
}

Matrix2 target_matrix(const Gate& gate) {
    const double r = std::numbers::sqrt2 / 2;
    const GateKind k = gate.kind == GateKind::Controlled ? gate.base : gate.kind;
    switch (k) {
        case GateKind::H: return {{{r, r}, {r, -r}}};
        case GateKind::X: return {{{0, 1}, {1, 0}}};
        case GateKind::Y: return {{{0, Amplitude(0, -1)}, {Amplitude(0, 1), 0}}};
        case GateKind::Z: return {{{1, 0}, {0, -1}}};
        case GateKind::U3: {
            const auto& a = gate.angles;
            const double c = std::cos(a.theta / 2);
            const double s = std::sin(a.theta / 2);
            auto phase = [](double angle) { return Amplitude(std::cos(angle), std::sin(angle)); };
            return {{{c, -s * phase(a.lambda)}, {s * phase(a.phi), c * phase(a.phi + a.lambda)}}};
        }
        case GateKind::Controlled: break;
    }
    throw GateError("unsupported gate kind");
}

void validate_gate(const Gate& gate, int n) {
    if (gate.kind == GateKind::Controlled) {
        if (gate.base != GateKind::X && gate.base != GateKind::Z) {
            throw GateError("controlled gates support only X and Z bases");
        }
        if (gate.controls.empty()) {
            throw GateError("controlled gate without controls");
        }
    }
    std::vector<int> qs = gate.qubits();
    for (int q : qs) {
        if (q < 0 || q >= n) {
            throw GateError("gate " + gate.to_string() + " touches qubit " + std::to_string(q) + " of a " +
                            std::to_string(n) + "-qubit state");
        }
    }
    std::sort(qs.begin(), qs.end());
    if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
        throw GateError("gate " + gate.to_string() + " uses a qubit twice");
    }
}

void apply_gate(StateVector& state, const Gate& gate) {
    const int n = state.num_qubits();
    validate_gate(gate, n);
    auto amps = state.mutable_amplitudes();
    const uint64_t tmask = qubit_mask(gate.target, n);
    uint64_t cmask = 0;
    uint64_t cval = 0;
    for (const auto& c : gate.controls) {
        const uint64_t m = qubit_mask(c.qubit, n);
        cmask |= m;
        if (c.polarity == ControlPolarity::Closed) cval |= m;
    }
    const uint64_t half = state.dim() / 2;
    const GateKind k = gate.kind == GateKind::Controlled ? gate.base : gate.kind;

    if (k == GateKind::Z) {
        // Diagonal: flip the sign wherever target and all controls fire.
        for (uint64_t j = 0; j < half; ++j) {
            const uint64_t i = insert_zero(j, tmask) | tmask;
            if ((i & cmask) == cval) amps[i] = -amps[i];
        }
        return;
    }
    if (k == GateKind::X) {
        for (uint64_t j = 0; j < half; ++j) {
            const uint64_t i0 = insert_zero(j, tmask);
            if ((i0 & cmask) == cval) std::swap(amps[i0], amps[i0 | tmask]);
        }
        return;
    }
    const Matrix2 u = target_matrix(gate);
    for (uint64_t j = 0; j < half; ++j) {
        const uint64_t i0 = insert_zero(j, tmask);
        if ((i0 & cmask) != cval) continue;
        const uint64_t i1 = i0 | tmask;
        const Amplitude a0 = amps[i0];
        const Amplitude a1 = amps[i1];
        amps[i0] = u[0][0] * a0 + u[0][1] * a1;
        amps[i1] = u[1][0] * a0 + u[1][1] * a1;
    }
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
    for (const auto& g : circuit) apply_gate(state, g);
}

StateVector applied(StateVector state, const Gate& gate) {
    apply_gate(state, gate);
    return state;
}

StateVector plus_state(int n) {
    check_qubit_count(n);
    const uint64_t d = uint64_t{1} << n;
    return StateVector::from_amplitudes(std::vector<Amplitude>(d, Amplitude(std::pow(2.0, -n / 2.0), 0.0)));
}

// ---------------------------------------------------------------------------

void ShotHistogram::validate() const {
    uint64_t total = 0;
    for (const auto& [key, count] : counts) {
        if (key.size() != static_cast<size_t>(n_qubits) ||
            key.find_first_not_of("01") != std::string::npos) {
            throw InvariantError("histogram key '" + key + "' does not match " + std::to_string(n_qubits) +
                                 " qubits");
        }
        total += count;
    }
    if (total != shots) {
        throw InvariantError("histogram counts sum to " + std::to_string(total) + ", expected " +
                             std::to_string(shots));
    }
}

double ShotHistogram::frequency(const std::string& key) const {
    auto it = counts.find(key);
    if (it == counts.end() || shots == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(shots);
}

ShotHistogram ShotHistogram::marginal(std::span<const int> keep) const {
    for (int q : keep) {
        if (q < 0 || q >= n_qubits) throw ArgumentError("marginal qubit out of range");
    }
    ShotHistogram out{static_cast<int>(keep.size()), {}, shots, seed};
    for (const auto& [key, count] : counts) {
        std::string sub;
        sub.reserve(keep.size());
        for (int q : keep) sub.push_back(key[static_cast<size_t>(q)]);
        out.counts[sub] += count;
    }
    return out;
}

BasisSampler::BasisSampler(const StateVector& state) : cumulative_(state.dim()) {
    double acc = 0;
    for (uint64_t i = 0; i < state.dim(); ++i) {
        acc += std::norm(state[i]);
        cumulative_[i] = acc;
    }
}

uint64_t BasisSampler::operator()(double u) const {
    // Scale by the actual total so rounding in the cumulative sum can never
    // push a draw past the last bucket.
    const double target = u * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) {
        // Land on the last bucket with nonzero weight.
        it = std::lower_bound(cumulative_.begin(), cumulative_.end(), cumulative_.back());
    }
    return static_cast<uint64_t>(it - cumulative_.begin());
}

ShotHistogram sample_shots(const StateVector& state, uint64_t shots, uint64_t seed, int threads) {
    if (shots == 0) {
        throw ArgumentError("shots must be positive");
    }
    const BasisSampler sampler(state);
    std::vector<uint64_t> outcome(shots);
    auto work = [&](uint64_t begin, uint64_t end) {
        for (uint64_t s = begin; s < end; ++s) {
            SplitMix64 rng(derive_seed(seed, streams::kMeasurement, s));
            outcome[s] = sampler(rng.uniform());
        }
    };
    const uint64_t workers = static_cast<uint64_t>(std::max(1, threads));
    if (workers == 1) {
        work(0, shots);
    } else {
        std::vector<std::thread> pool;
        const uint64_t chunk = (shots + workers - 1) / workers;
        for (uint64_t w = 0; w < workers; ++w) {
            const uint64_t b = std::min(shots, w * chunk);
            const uint64_t e = std::min(shots, b + chunk);
            pool.emplace_back(work, b, e);
        }
        for (auto& t : pool) t.join();
    }
    std::map<uint64_t, uint64_t> by_index;
    for (uint64_t o : outcome) ++by_index[o];
    ShotHistogram h{state.num_qubits(), {}, shots, seed};
    for (const auto& [idx, c] : by_index) h.counts.emplace(basis_label(idx, state.num_qubits()), c);
    return h;
}

void apply_pauli_string(StateVector& state, std::string_view labels) {
    const int n = state.num_qubits();
    if (labels.size() != static_cast<size_t>(n)) {
        throw ArgumentError("Pauli label length " + std::to_string(labels.size()) + " != qubit count " +
                            std::to_string(n));
    }
    for (int q = 0; q < n; ++q) {
        switch (labels[static_cast<size_t>(q)]) {
            case 'I': break;
            case 'X': apply_gate(state, Gate::x(q)); break;
            case 'Y': apply_gate(state, Gate::y(q)); break;
            case 'Z': apply_gate(state, Gate::z(q)); break;
            default:
                throw ArgumentError(std::string("bad Pauli label character '") + labels[static_cast<size_t>(q)] +
                                    "'");
        }
    }
}

double expectation_pauli(const StateVector& state, std::string_view labels) {
    StateVector p = state;
    apply_pauli_string(p, labels);
    const Amplitude v = inner_product(state, p);
    return std::clamp(v.real(), -1.0, 1.0);
}

DensityMatrix reduced_density(const StateVector& state, std::span<const int> keep) {
    const int n = state.num_qubits();
    if (keep.empty()) {
        throw ArgumentError("reduced_density needs at least one kept qubit");
    }
    std::vector<int> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || sorted.back() >= n ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ArgumentError("reduced_density keep list has invalid or repeated qubits");
    }
    const int k = static_cast<int>(keep.size());
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (!std::binary_search(sorted.begin(), sorted.end(), q)) traced.push_back(q);
    }
    const uint64_t dk = uint64_t{1} << k;
    const uint64_t dt = uint64_t{1} << traced.size();

    // Basis index for (kept bits r, traced bits e).
    auto compose = [&](uint64_t r, uint64_t e) {
        uint64_t idx = 0;
        for (int i = 0; i < k; ++i) {
            if (r & qubit_mask(i, k)) idx |= qubit_mask(keep[static_cast<size_t>(i)], n);
        }
        const int nt = static_cast<int>(traced.size());
        for (int i = 0; i < nt; ++i) {
            if (e & qubit_mask(i, nt)) idx |= qubit_mask(traced[static_cast<size_t>(i)], n);
        }
        return idx;
    };

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (uint64_t e = 0; e < dt; ++e) {
        for (uint64_t r = 0; r < dk; ++r) {
            const Amplitude ar = state[compose(r, e)];
            if (ar == Amplitude(0)) continue;
            for (uint64_t c = 0; c < dk; ++c) {
                rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += ar * std::conj(state[compose(c, e)]);
            }
        }
    }
    rho = (rho + rho.adjoint()) / 2.0;
    return DensityMatrix(k, std::move(rho));
}

Projection project_outcome(const StateVector& state, std::span<const int> measured, std::string_view bits) {
    const int n = state.num_qubits();
    if (bits.size() != measured.size()) {
        throw ArgumentError("outcome length does not match measured qubit list");
    }
    uint64_t mmask = 0;
    uint64_t mval = 0;
    for (size_t i = 0; i < measured.size(); ++i) {
        const int q = measured[i];
        if (q < 0 || q >= n) throw ArgumentError("measured qubit out of range");
        const uint64_t m = qubit_mask(q, n);
        if (mmask & m) throw ArgumentError("measured qubit listed twice");
        mmask |= m;
        if (bits[i] == '1') {
            mval |= m;
        } else if (bits[i] != '0') {
            throw ArgumentError("outcome may only contain 0 and 1");
        }
    }
    std::vector<int> rest;
    for (int q = 0; q < n; ++q) {
        if (!(mmask & qubit_mask(q, n))) rest.push_back(q);
    }
    const int nr = static_cast<int>(rest.size());
    Projection p;
    p.amplitudes.assign(uint64_t{1} << nr, Amplitude(0));
    for (uint64_t r = 0; r < p.amplitudes.size(); ++r) {
        uint64_t idx = mval;
        for (int i = 0; i < nr; ++i) {
            if (r & qubit_mask(i, nr)) idx |= qubit_mask(rest[static_cast<size_t>(i)], n);
        }
        p.amplitudes[r] = state[idx];
        p.probability += std::norm(state[idx]);
    }
    return p;
}

}  // namespace hyperteleport
