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

#include "hyperteleport/hypergraph.h"

#include <algorithm>
#include <string>

#include "hyperteleport/errors.h"

namespace hyperteleport {

Hypergraph::Hypergraph(int n_vertices, std::vector<Edge> edges) : n_(n_vertices) {
    if (n_vertices < 1 || n_vertices > kMaxQubits) {
        throw SizeError("hypergraph vertex count " + std::to_string(n_vertices) + " out of range");
    }
    for (auto& e : edges) {
        if (e.empty()) {
            throw ModelError("empty hyperedge");
        }
        std::sort(e.begin(), e.end());
        if (e.front() < 0 || e.back() >= n_vertices) {
            throw ModelError("hyperedge vertex out of range for " + std::to_string(n_vertices) + " vertices");
        }
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
            throw ModelError("hyperedge repeats a vertex");
        }
        edges_.insert(std::move(e));
    }
}

bool is_k_uniform(const Hypergraph& h, int k) {
    return std::all_of(h.edges().begin(), h.edges().end(),
                       [k](const Hypergraph::Edge& e) { return static_cast<int>(e.size()) == k; });
}

Gate edge_gate(const Hypergraph::Edge& edge) {
    if (edge.size() == 1) return Gate::z(edge.front());
    std::vector<Control> controls;
    for (size_t i = 0; i + 1 < edge.size(); ++i) controls.push_back({edge[i]});
    return Gate::controlled(std::move(controls), GateKind::Z, edge.back());
}

StateVector build_hypergraph_state(const Hypergraph& h) {
    StateVector s = plus_state(h.num_vertices());
    for (const auto& e : h.edges()) apply_gate(s, edge_gate(e));
    return s;
}

int sign_oracle(const Hypergraph& h, uint64_t basis_index) {
    const int n = h.num_vertices();
    int contained = 0;
    for (const auto& e : h.edges()) {
        bool all_set = true;
        for (int v : e) all_set = all_set && ((basis_index >> (n - 1 - v)) & 1);
        contained += all_set;
    }
    return contained % 2 == 0 ? 1 : -1;
}

Circuit channel_3q_circuit() {
    return {
        Gate::h(0),
        Gate::h(1),
        Gate::h(2),
        Gate::ccz(0, 1, 2),
        Gate::controlled({{0, ControlPolarity::Closed}, {1, ControlPolarity::Open}}, GateKind::Z, 2),
        Gate::h(2),
    };
}

Circuit channel_4q_circuit() {
    return {
        Gate::h(0),
        Gate::h(1),
        Gate::h(2),
        Gate::h(3),
        Gate::ccz(0, 1, 2),
        Gate::ccz(1, 2, 3),
        // reduction
        Gate::h(0),
        Gate::h(3),
        Gate::cnot(1, 3),
        Gate::cnot(2, 0),
        Gate::ccnot(1, 2, 3),
        Gate::ccnot(1, 2, 0),
    };
}

ChannelState build_channel_3q() {
    StateVector s = StateVector::zero(3);
    apply_circuit(s, channel_3q_circuit());
    return {std::move(s), {0, 1}, {2}};
}

ChannelState build_channel_4q() {
    StateVector s = StateVector::zero(4);
    apply_circuit(s, channel_4q_circuit());
    return {std::move(s), {0, 1}, {2, 3}};
}

}  // namespace hyperteleport
