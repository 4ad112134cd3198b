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

#ifndef HYPERTELEPORT_CLI_H
#define HYPERTELEPORT_CLI_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hyperteleport/serialization.h"

namespace hyperteleport::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

inline constexpr uint64_t kDefaultShots = 8192;
inline constexpr const char* kSeedEnvVar = "HYPERTELEPORT_SEED";

/// --seed if given, else $HYPERTELEPORT_SEED, else `fallback`.
uint64_t resolve_seed(std::optional<uint64_t> flag, uint64_t fallback = 0);

/// Message for a protocol run. When `prep` is set the message is produced by
/// U3 gates inside the circuit; otherwise `state` is loaded directly.
struct MessageSpec {
    Protocol protocol = Protocol::Single;
    std::optional<std::vector<U3Angles>> prep;
    StateVector state;
};

/// Default message: U3(pi/2, 0, 0) on each message qubit.
MessageSpec default_message(Protocol protocol);
MessageSpec message_from_u3(Protocol protocol, std::vector<U3Angles> prep);
/// Parses {"alpha": [re, im], ...}. Throws InputError.
MessageSpec message_from_json(Protocol protocol, const Json& j);

/// Initial state and circuit of a full run: message (x) channel prep, then
/// Alice's gates (and the controlled corrections when `deferred`).
struct ProtocolRun {
    StateVector initial;
    Circuit circuit;
};
ProtocolRun build_protocol_run(const MessageSpec& msg, bool deferred);

/// Total variation distance and per-key deltas. Both histograms must have the
/// same width; the key universe is every bit string of that width.
CompareReport compare_histograms(const ShotHistogram& a, const ShotHistogram& b);

/// Reads a histogram from a bare histogram document or from a result
/// envelope holding a histogram or a teleport summary.
ShotHistogram histogram_from_document(const Json& j);

ResultEnvelope cmd_channel(const std::string& kind, const std::optional<Hypergraph>& hypergraph);

ResultEnvelope cmd_teleport(const MessageSpec& msg, uint64_t shots, uint64_t seed,
                            const std::optional<NoiseModel>& noise);

/// Teleported-state tomography when `state` is empty, otherwise tomography of
/// the given state.
ResultEnvelope cmd_tomo(const MessageSpec& msg, const std::optional<StateVector>& state, TomographyMode mode,
                        uint64_t shots, uint64_t seed, const std::optional<NoiseModel>& noise, bool psd);

ResultEnvelope cmd_fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e);

ResultEnvelope cmd_compare(const ShotHistogram& a, const ShotHistogram& b);

ResultEnvelope cmd_sweep(const MessageSpec& msg, const std::vector<double>& grid, uint64_t shots, uint64_t seed,
                         int repeats, double readout_flip);

/// Entry point. Returns the process exit code; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperteleport::cli

#endif
