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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hyperteleport/errors.h"
#include "hyperteleport/hypergraph.h"
#include "hyperteleport/rng.h"

namespace hyperteleport {

namespace {

struct PauliHit {
    size_t after_gate;
    int qubit;
    GateKind pauli;
};

Gate pauli_gate(GateKind k, int q) { return {k, q}; }

size_t prep_count(Protocol protocol) { return protocol == Protocol::Single ? 1 : 2; }

void check_prep(Protocol protocol, std::span<const U3Angles> prep) {
    if (prep.size() != prep_count(protocol)) {
        throw ArgumentError("message preparation needs " + std::to_string(prep_count(protocol)) + " U3 angle sets");
    }
}

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (size_t i = 0; i < order.size();) {
        size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

void NoiseModel::validate() const {
    auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!ok(gate_error_prob) || !ok(readout_flip_prob)) {
        throw ArgumentError("noise probabilities must lie in [0, 1]");
    }
}

ShotHistogram noisy_run(const Circuit& circuit, int n, const NoiseModel& noise, uint64_t shots) {
    return noisy_run(circuit, StateVector::zero(n), noise, shots);
}

ShotHistogram noisy_run(const Circuit& circuit, const StateVector& initial, const NoiseModel& noise, uint64_t shots) {
    noise.validate();
    if (shots == 0) {
        throw ArgumentError("shots must be positive");
    }
    const int n = initial.num_qubits();
    for (const auto& g : circuit) validate_gate(g, n);

    StateVector ideal = initial;
    apply_circuit(ideal, circuit);
    const BasisSampler ideal_sampler(ideal);

    std::map<uint64_t, uint64_t> by_index;
    std::vector<PauliHit> hits;
    for (uint64_t s = 0; s < shots; ++s) {
        hits.clear();
        if (noise.gate_error_prob > 0) {
            SplitMix64 rng(derive_seed(noise.seed, streams::kGateNoise, s));
            for (size_t g = 0; g < circuit.size(); ++g) {
                if (rng.uniform() < noise.gate_error_prob) {
                    const auto touched = circuit[g].qubits();
                    const int q = touched[rng.below(touched.size())];
                    static constexpr GateKind kPaulis[] = {GateKind::X, GateKind::Y, GateKind::Z};
                    hits.push_back({g, q, kPaulis[rng.below(3)]});
                }
            }
        }

        SplitMix64 meas(derive_seed(noise.seed, streams::kMeasurement, s));
        uint64_t outcome;
        if (hits.empty()) {
            outcome = ideal_sampler(meas.uniform());
        } else {
            StateVector traj = initial;
            auto hit = hits.begin();
            for (size_t g = 0; g < circuit.size(); ++g) {
                apply_gate(traj, circuit[g]);
                for (; hit != hits.end() && hit->after_gate == g; ++hit) {
                    apply_gate(traj, pauli_gate(hit->pauli, hit->qubit));
                }
            }
            outcome = BasisSampler(traj)(meas.uniform());
        }

        if (noise.readout_flip_prob > 0) {
            SplitMix64 ro(derive_seed(noise.seed, streams::kReadoutNoise, s));
            for (int q = 0; q < n; ++q) {
                if (ro.uniform() < noise.readout_flip_prob) outcome ^= qubit_mask(q, n);
            }
        }
        ++by_index[outcome];
    }

    ShotHistogram h{n, {}, shots, noise.seed};
    for (const auto& [idx, c] : by_index) h.counts.emplace(basis_label(idx, n), c);
    return h;
}

Circuit teleport_pipeline_circuit(Protocol protocol, std::span<const U3Angles> prep) {
    check_prep(protocol, prep);
    Circuit c;
    for (size_t i = 0; i < prep.size(); ++i) c.push_back(Gate::u3(static_cast<int>(i), prep[i]));

    const int offset = static_cast<int>(prep.size());
    const Circuit channel = protocol == Protocol::Single ? channel_3q_circuit() : channel_4q_circuit();
    for (Gate g : channel) {
        g.target += offset;
        for (auto& ctl : g.controls) ctl.qubit += offset;
        c.push_back(std::move(g));
    }
    for (const auto& g : protocol_circuit(protocol, true)) c.push_back(g);
    return c;
}

StateVector prepared_message(Protocol protocol, std::span<const U3Angles> prep) {
    check_prep(protocol, prep);
    if (protocol == Protocol::Single) return SingleQubitMessage::from_u3(prep[0]).state();
    return TwoQubitMessage::from_u3_pair(prep[0], prep[1]).state();
}

PipelineResult noisy_teleport_tomography(Protocol protocol, std::span<const U3Angles> prep, const NoiseModel& noise,
                                         uint64_t shots) {
    const Circuit base = teleport_pipeline_circuit(protocol, prep);
    const int n = joint_qubit_count(protocol);
    const auto bob = bob_qubits(protocol);

    auto runner = [&](const MeasurementSetting& setting, uint64_t setting_shots, uint64_t seed) {
        Circuit c = base;
        for (const auto& g : setting.rotation(bob)) c.push_back(g);
        NoiseModel m = noise;
        m.seed = seed;
        return noisy_run(c, n, m, setting_shots).marginal(bob);
    };
    TomographyOptions opts;
    opts.shots = shots;
    opts.seed = noise.seed;
    DensityMatrix rho = tomograph_with_runner(static_cast<int>(bob.size()), runner, opts);
    FidelityReport f = fidelity(theoretical_density(prepared_message(protocol, prep)), rho);
    return {std::move(rho), f};
}

std::vector<SweepRow> fidelity_vs_noise(Protocol protocol, std::span<const U3Angles> prep,
                                        std::span<const double> grid, uint64_t shots, uint64_t seed, int repeats,
                                        double readout_flip_prob) {
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw ArgumentError("noise grid must be sorted ascending");
    }
    if (repeats < 1) {
        throw ArgumentError("repeats must be positive");
    }
    std::vector<SweepRow> rows;
    for (double p : grid) {
        SweepRow row{p, 0.0, {}};
        for (int r = 0; r < repeats; ++r) {
            NoiseModel m{p, readout_flip_prob, derive_seed(seed, streams::kRepeat, static_cast<uint64_t>(r))};
            row.fidelities.push_back(noisy_teleport_tomography(protocol, prep, m, shots).fidelity.value);
        }
        row.mean_fidelity =
            std::accumulate(row.fidelities.begin(), row.fidelities.end(), 0.0) / static_cast<double>(repeats);
        rows.push_back(std::move(row));
    }
    return rows;
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ArgumentError("spearman correlation needs two equal-length samples of size >= 2");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace hyperteleport
