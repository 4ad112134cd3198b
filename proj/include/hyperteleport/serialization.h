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
 * JSON (and CSV, where it applies) forms of every type that crosses the
 * command line. Complex numbers are always [re, im] pairs. Parsers throw
 * InputError on malformed documents.
 */

#ifndef HYPERTELEPORT_SERIALIZATION_H
#define HYPERTELEPORT_SERIALIZATION_H

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperteleport/density_matrix.h"
#include "hyperteleport/hypergraph.h"
#include "hyperteleport/noise.h"
#include "hyperteleport/statevec.h"
#include "hyperteleport/teleport.h"
#include "hyperteleport/tomography.h"
#include "json.hpp"

namespace hyperteleport {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

Json state_to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

/// {"n": 1, "re": [[..]], "im": [[..]]}, row-major.
Json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

/// {"n": 3, "shots": 8192, "seed": 7, "counts": {"000": 2048, ...}}
Json histogram_to_json(const ShotHistogram& h);
ShotHistogram histogram_from_json(const Json& j);
/// "bitstring,count" rows sorted by bit string.
std::string histogram_to_csv(const ShotHistogram& h);

/// {"n": 4, "edges": [[0,1,2],[1,2,3]]}
Json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

/// {"XZ": 0.013, ...}; the width is inferred from the label length.
Json stokes_to_json(const StokesTensor& t);
StokesTensor stokes_from_json(const Json& j);

/// {"gate_error": 0.05, "readout_flip": 0.02, "seed": 7}
Json noise_to_json(const NoiseModel& m);
NoiseModel noise_from_json(const Json& j);

/// {"alpha": [re, im], "beta": [re, im]}
Json message_to_json(const SingleQubitMessage& m);
SingleQubitMessage single_message_from_json(const Json& j);
/// {"alpha": .., "beta": .., "gamma": .., "delta": ..}
Json message_to_json(const TwoQubitMessage& m);
TwoQubitMessage two_message_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Result envelope.

/// A channel or stored state plus its amplitude table.
struct StateOutput {
    StateVector state;
    std::vector<int> alice_qubits;
    std::vector<int> bob_qubits;
    friend bool operator==(const StateOutput&, const StateOutput&) = default;
};

struct BranchSummary {
    std::string alice_bits;
    double probability = 0;
    std::string correction;
    double fidelity = 0;
    friend bool operator==(const BranchSummary&, const BranchSummary&) = default;
};

struct TeleportSummary {
    ShotHistogram histogram;
    std::vector<BranchSummary> branches;
    friend bool operator==(const TeleportSummary&, const TeleportSummary&) = default;
};

struct TomographyOutput {
    DensityMatrix density;
    /// Fidelity against the expected state when one is known.
    std::optional<FidelityReport> fidelity;
    friend bool operator==(const TomographyOutput&, const TomographyOutput&) = default;
};

struct CompareReport {
    double total_variation = 0;
    /// frequency_b - frequency_a for every key seen in either histogram.
    std::map<std::string, double> deltas;
    friend bool operator==(const CompareReport&, const CompareReport&) = default;
};

using SweepTable = std::vector<SweepRow>;

using Output = std::variant<StateOutput, ShotHistogram, TeleportSummary, TomographyOutput, FidelityReport,
                            CompareReport, SweepTable>;

struct ResultEnvelope {
    std::string command;
    Json parameters = Json::object();
    uint64_t seed = 0;
    Output outputs;
    std::string schema_version = kSchemaVersion;

    friend bool operator==(const ResultEnvelope&, const ResultEnvelope&) = default;
};

Json envelope_to_json(const ResultEnvelope& e);
ResultEnvelope envelope_from_json(const Json& j);

/// Pretty JSON with a trailing newline; stable key order and number formatting.
std::string dump(const Json& j);

/// CSV for histogram-like and sweep outputs. Throws InputError for other kinds.
std::string envelope_to_csv(const ResultEnvelope& e);

/// Fidelity rounded to 4 decimals, e.g. "0.7228".
std::string format_fidelity(double f);

}  // namespace hyperteleport

#endif
