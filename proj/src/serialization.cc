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

#include "hyperteleport/serialization.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hyperteleport/errors.h"

namespace hyperteleport {

namespace {

Json complex_to_json(Amplitude a) { return Json::array({a.real(), a.imag()}); }

Amplitude complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError("complex numbers must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("field '") + key + "': " + e.what());
    }
}

// Most parsers funnel library exceptions into InputError.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const ArgumentError& e) {
        throw InputError(std::string(what) + ": " + e.what());
    } catch (const InvariantError& e) {
        throw InputError(std::string(what) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

Json int_list(const std::vector<int>& v) { return Json(v); }

Json fidelity_to_json(const FidelityReport& f) {
    return {{"fidelity", f.value},
            {"display", format_fidelity(f.value)},
            {"pure_shortcut", f.pure_shortcut},
            {"clamped", f.clamped},
            {"min_eigenvalue_experimental", f.min_eigenvalue_e}};
}

FidelityReport fidelity_from_json(const Json& j) {
    FidelityReport f;
    f.value = get_as<double>(j, "fidelity");
    f.pure_shortcut = get_as<bool>(j, "pure_shortcut");
    f.clamped = get_as<bool>(j, "clamped");
    f.min_eigenvalue_e = get_as<double>(j, "min_eigenvalue_experimental");
    return f;
}

Json state_output_to_json(const StateOutput& o) {
    Json j = state_to_json(o.state);
    Json table = Json::array();
    const int n = o.state.num_qubits();
    for (uint64_t i = 0; i < o.state.dim(); ++i) {
        if (std::abs(o.state[i]) < 1e-15) continue;
        table.push_back({{"basis", basis_label(i, n)}, {"re", o.state[i].real()}, {"im", o.state[i].imag()}});
    }
    j["table"] = std::move(table);
    j["alice_qubits"] = int_list(o.alice_qubits);
    j["bob_qubits"] = int_list(o.bob_qubits);
    return j;
}

Json teleport_to_json(const TeleportSummary& t) {
    Json branches = Json::array();
    for (const auto& b : t.branches) {
        branches.push_back({{"alice_bits", b.alice_bits},
                            {"probability", b.probability},
                            {"correction", b.correction},
                            {"fidelity", b.fidelity}});
    }
    return {{"histogram", histogram_to_json(t.histogram)}, {"branches", std::move(branches)}};
}

TeleportSummary teleport_from_json(const Json& j) {
    TeleportSummary t{histogram_from_json(field(j, "histogram")), {}};
    for (const auto& b : field(j, "branches")) {
        t.branches.push_back({get_as<std::string>(b, "alice_bits"), get_as<double>(b, "probability"),
                              get_as<std::string>(b, "correction"), get_as<double>(b, "fidelity")});
    }
    return t;
}

Json sweep_to_json(const SweepTable& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        out.push_back(
            {{"gate_error", r.gate_error_prob}, {"mean_fidelity", r.mean_fidelity}, {"fidelities", r.fidelities}});
    }
    return out;
}

SweepTable sweep_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("sweep table must be an array");
    SweepTable rows;
    for (const auto& r : j) {
        rows.push_back({get_as<double>(r, "gate_error"), get_as<double>(r, "mean_fidelity"),
                        get_as<std::vector<double>>(r, "fidelities")});
    }
    return rows;
}

}  // namespace

// ---------------------------------------------------------------------------

Json state_to_json(const StateVector& s) {
    Json amps = Json::array();
    for (const auto& a : s.amplitudes()) amps.push_back(complex_to_json(a));
    return {{"n", s.num_qubits()}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const Json& j) {
    return guarded("state", [&] {
        const int n = get_as<int>(j, "n");
        std::vector<Amplitude> amps;
        for (const auto& a : field(j, "amplitudes")) amps.push_back(complex_from_json(a));
        if (n < 1 || n > kMaxQubits || amps.size() != (uint64_t{1} << n)) {
            throw InputError("state amplitude count does not match n");
        }
        return StateVector::from_amplitudes(std::move(amps));
    });
}

Json density_to_json(const DensityMatrix& rho) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < rho.dim(); ++r) {
        Json rr = Json::array();
        Json ri = Json::array();
        for (Eigen::Index c = 0; c < rho.dim(); ++c) {
            rr.push_back(rho(r, c).real());
            ri.push_back(rho(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    return {{"n", rho.num_qubits()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_from_json(const Json& j) {
    return guarded("density matrix", [&] {
        const int n = get_as<int>(j, "n");
        if (n < 1 || n > kMaxQubits) throw InputError("density matrix n out of range");
        const auto re = get_as<std::vector<std::vector<double>>>(j, "re");
        const auto im = get_as<std::vector<std::vector<double>>>(j, "im");
        const size_t d = size_t{1} << n;
        auto square = [d](const std::vector<std::vector<double>>& m) {
            if (m.size() != d) return false;
            for (const auto& row : m) {
                if (row.size() != d) return false;
            }
            return true;
        };
        if (!square(re) || !square(im)) {
            throw InputError("density matrix must be " + std::to_string(d) + "x" + std::to_string(d));
        }
        Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (size_t r = 0; r < d; ++r) {
            for (size_t c = 0; c < d; ++c) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {re[r][c], im[r][c]};
            }
        }
        return DensityMatrix(n, std::move(m));
    });
}

Json histogram_to_json(const ShotHistogram& h) {
    Json counts = Json::object();
    for (const auto& [k, v] : h.counts) counts[k] = v;
    return {{"n", h.n_qubits}, {"shots", h.shots}, {"seed", h.seed}, {"counts", std::move(counts)}};
}

ShotHistogram histogram_from_json(const Json& j) {
    return guarded("histogram", [&] {
        ShotHistogram h;
        h.n_qubits = get_as<int>(j, "n");
        h.shots = get_as<uint64_t>(j, "shots");
        h.seed = j.contains("seed") ? get_as<uint64_t>(j, "seed") : 0;
        const Json& counts = field(j, "counts");
        if (!counts.is_object()) throw InputError("histogram counts must be an object");
        for (const auto& [k, v] : counts.items()) {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
                throw InputError("histogram count for '" + k + "' must be a non-negative integer");
            }
            const uint64_t c = v.get<uint64_t>();
            if (c > 0) h.counts[k] = c;
        }
        h.validate();
        return h;
    });
}

std::string histogram_to_csv(const ShotHistogram& h) {
    std::ostringstream os;
    os << "bitstring,count\n";
    for (const auto& [k, v] : h.counts) os << k << "," << v << "\n";
    return os.str();
}

Json hypergraph_to_json(const Hypergraph& h) {
    Json edges = Json::array();
    for (const auto& e : h.edges()) edges.push_back(e);
    return {{"n", h.num_vertices()}, {"edges", std::move(edges)}};
}

Hypergraph hypergraph_from_json(const Json& j) {
    return guarded("hypergraph", [&] {
        return Hypergraph(get_as<int>(j, "n"), get_as<std::vector<std::vector<int>>>(j, "edges"));
    });
}

Json stokes_to_json(const StokesTensor& t) {
    Json j = Json::object();
    for (const auto& [label, v] : t.values()) j[label] = v;
    return j;
}

StokesTensor stokes_from_json(const Json& j) {
    return guarded("stokes tensor", [&] {
        if (!j.is_object() || j.empty()) throw InputError("Stokes tensor must be a non-empty object");
        const int n = static_cast<int>(j.begin().key().size());
        StokesTensor t(n);
        if (j.size() != t.values().size()) {
            throw InputError("Stokes tensor must list all " + std::to_string(t.values().size()) + " labels");
        }
        for (const auto& [label, v] : j.items()) t.set(label, v.get<double>());
        return t;
    });
}

Json noise_to_json(const NoiseModel& m) {
    return {{"gate_error", m.gate_error_prob}, {"readout_flip", m.readout_flip_prob}, {"seed", m.seed}};
}

NoiseModel noise_from_json(const Json& j) {
    return guarded("noise model", [&] {
        NoiseModel m;
        m.gate_error_prob = j.contains("gate_error") ? get_as<double>(j, "gate_error") : 0.0;
        m.readout_flip_prob = j.contains("readout_flip") ? get_as<double>(j, "readout_flip") : 0.0;
        m.seed = j.contains("seed") ? get_as<uint64_t>(j, "seed") : 0;
        m.validate();
        return m;
    });
}

Json message_to_json(const SingleQubitMessage& m) {
    return {{"alpha", complex_to_json(m.alpha)}, {"beta", complex_to_json(m.beta)}};
}

SingleQubitMessage single_message_from_json(const Json& j) {
    return guarded("message", [&] {
        return SingleQubitMessage{complex_from_json(field(j, "alpha")), complex_from_json(field(j, "beta"))};
    });
}

Json message_to_json(const TwoQubitMessage& m) {
    return {{"alpha", complex_to_json(m.alpha)},
            {"beta", complex_to_json(m.beta)},
            {"gamma", complex_to_json(m.gamma)},
            {"delta", complex_to_json(m.delta)}};
}

TwoQubitMessage two_message_from_json(const Json& j) {
    return guarded("message", [&] {
        return TwoQubitMessage{complex_from_json(field(j, "alpha")), complex_from_json(field(j, "beta")),
                               complex_from_json(field(j, "gamma")), complex_from_json(field(j, "delta"))};
    });
}

// ---------------------------------------------------------------------------

Json envelope_to_json(const ResultEnvelope& e) {
    Json out;
    std::string kind;
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, StateOutput>) {
                kind = "state";
                out = state_output_to_json(o);
            } else if constexpr (std::is_same_v<T, ShotHistogram>) {
                kind = "histogram";
                out = histogram_to_json(o);
            } else if constexpr (std::is_same_v<T, TeleportSummary>) {
                kind = "teleport";
                out = teleport_to_json(o);
            } else if constexpr (std::is_same_v<T, TomographyOutput>) {
                kind = "density_matrix";
                out = density_to_json(o.density);
                if (o.fidelity) out["fidelity"] = fidelity_to_json(*o.fidelity);
            } else if constexpr (std::is_same_v<T, FidelityReport>) {
                kind = "fidelity";
                out = fidelity_to_json(o);
            } else if constexpr (std::is_same_v<T, CompareReport>) {
                kind = "compare";
                out = {{"total_variation", o.total_variation}, {"deltas", o.deltas}};
            } else if constexpr (std::is_same_v<T, SweepTable>) {
                kind = "sweep";
                out = sweep_to_json(o);
            }
        },
        e.outputs);
    return {{"schema_version", e.schema_version},
            {"command", e.command},
            {"parameters", e.parameters},
            {"seed", e.seed},
            {"output_kind", kind},
            {"outputs", std::move(out)}};
}

ResultEnvelope envelope_from_json(const Json& j) {
    return guarded("result envelope", [&]() -> ResultEnvelope {
        const auto version = get_as<std::string>(j, "schema_version");
        if (version != kSchemaVersion) throw InputError("unsupported schema_version '" + version + "'");
        const auto kind = get_as<std::string>(j, "output_kind");
        const Json& o = field(j, "outputs");
        auto make = [&](Output out) {
            return ResultEnvelope{get_as<std::string>(j, "command"), field(j, "parameters"),
                                  get_as<uint64_t>(j, "seed"), std::move(out), version};
        };
        if (kind == "state") {
            return make(StateOutput{state_from_json(o), get_as<std::vector<int>>(o, "alice_qubits"),
                                    get_as<std::vector<int>>(o, "bob_qubits")});
        }
        if (kind == "histogram") return make(histogram_from_json(o));
        if (kind == "teleport") return make(teleport_from_json(o));
        if (kind == "density_matrix") {
            std::optional<FidelityReport> f;
            if (o.contains("fidelity")) f = fidelity_from_json(o.at("fidelity"));
            return make(TomographyOutput{density_from_json(o), f});
        }
        if (kind == "fidelity") return make(fidelity_from_json(o));
        if (kind == "compare") {
            return make(CompareReport{get_as<double>(o, "total_variation"),
                                      get_as<std::map<std::string, double>>(o, "deltas")});
        }
        if (kind == "sweep") return make(sweep_from_json(o));
        throw InputError("unknown output_kind '" + kind + "'");
    });
}

namespace {
std::string shortest(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, r.ptr};
}
}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string envelope_to_csv(const ResultEnvelope& e) {
    if (const auto* h = std::get_if<ShotHistogram>(&e.outputs)) return histogram_to_csv(*h);
    if (const auto* t = std::get_if<TeleportSummary>(&e.outputs)) return histogram_to_csv(t->histogram);
    if (const auto* s = std::get_if<SweepTable>(&e.outputs)) {
        std::ostringstream os;
        os << "gate_error,mean_fidelity\n";
        for (const auto& r : *s) os << shortest(r.gate_error_prob) << "," << shortest(r.mean_fidelity) << "\n";
        return os.str();
    }
    if (const auto* c = std::get_if<CompareReport>(&e.outputs)) {
        std::ostringstream os;
        os << "bitstring,delta\n";
        for (const auto& [k, v] : c->deltas) os << k << "," << shortest(v) << "\n";
        return os.str();
    }
    throw InputError("CSV output is only available for histograms, comparisons and sweep tables");
}

std::string format_fidelity(double f) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", f);
    return buf;
}

}  // namespace hyperteleport
