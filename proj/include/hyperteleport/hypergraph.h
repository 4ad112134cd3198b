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

#ifndef HYPERTELEPORT_HYPERGRAPH_H
#define HYPERTELEPORT_HYPERGRAPH_H

#include <cstdint>
#include <set>
#include <vector>

#include "hyperteleport/statevec.h"

namespace hyperteleport {

/// Vertex count plus a set of hyperedges. Each hyperedge is stored as a
/// sorted vertex list; duplicate hyperedges collapse.
class Hypergraph {
   public:
    using Edge = std::vector<int>;

    /// Throws ModelError on a vertex outside [0, n), an empty edge, or a
    /// vertex repeated inside one edge. Throws SizeError unless
    /// 1 <= n <= kMaxQubits.
    Hypergraph(int n_vertices, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    const std::set<Edge>& edges() const { return edges_; }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

   private:
    int n_;
    std::set<Edge> edges_;
};

/// True iff every hyperedge has exactly k vertices.
bool is_k_uniform(const Hypergraph& h, int k);

/// The C^{|e|}Z gate of a hyperedge: Z on the last vertex controlled by the
/// others. A single-vertex edge is a plain Z.
Gate edge_gate(const Hypergraph::Edge& edge);

/// Product of edge_gate(e) over all hyperedges applied to |+>^n.
StateVector build_hypergraph_state(const Hypergraph& h);

/// (-1)^(number of hyperedges whose vertices are all 1 in basis_index),
/// computed by direct counting.
int sign_oracle(const Hypergraph& h, uint64_t basis_index);

/// Shared entangled resource for a teleportation run.
struct ChannelState {
    StateVector state;
    std::vector<int> alice_qubits;
    std::vector<int> bob_qubits;
};

/// Gates preparing the 3-qubit channel from |000>: H on all three, CCZ with
/// closed controls, CCZ with an open control on qubit 1, then H on qubit 2.
Circuit channel_3q_circuit();

/// Gates preparing the 4-qubit channel from |0000>.
Circuit channel_4q_circuit();

/// Number of leading gates of channel_4q_circuit() that produce the 4-qubit
/// 3-uniform hypergraph state (before the reduction gates).
inline constexpr size_t kChannel4qHypergraphPrefix = 6;

/// (|000> + |010> + |101> + |111>)/2; Alice holds qubits 0,1 and Bob qubit 2.
ChannelState build_channel_3q();

/// (|0000> + |0101> + |1010> + |1111>)/2; Alice holds 0,1 and Bob 2,3.
ChannelState build_channel_4q();

}  // namespace hyperteleport

#endif
