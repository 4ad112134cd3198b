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

#include "hyperteleport/cli.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hyperteleport/errors.h"
#include "hyperteleport/hypergraph.h"
#include "hyperteleport/noise.h"
#include "hyperteleport/teleport.h"
#include "hyperteleport/tomography.h"

namespace hyperteleport::cli {

namespace {

std::string protocol_name(Protocol p) { return p == Protocol::Single ? "single" : "two"; }

Protocol parse_protocol(const std::string& s) {
    if (s == "single") return Protocol::Single;
    if (s == "two") return Protocol::Two;
    throw InputError("protocol must be 'single' or 'two'");
}

/// "1.5", "pi", "-pi/2", "3*pi/4", "0.25*pi".
double parse_angle(std::string token) {
    std::erase(token, ' ');
    auto number = [](const std::string& s) -> double {
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw InputError("bad angle '" + s + "'");
        }
        if (used != s.size()) throw InputError("bad angle '" + s + "'");
        return v;
    };
    const auto pos = token.find("pi");
    if (pos == std::string::npos) return number(token);
    std::string prefix = token.substr(0, pos);
    std::string suffix = token.substr(pos + 2);
    double scale = 1.0;
    if (prefix == "-") {
        scale = -1.0;
    } else if (!prefix.empty() && prefix != "+") {
        if (prefix.back() == '*') prefix.pop_back();
        scale = number(prefix);
    }
    double divisor = 1.0;
    if (!suffix.empty()) {
        if (suffix.front() != '/') throw InputError("bad angle '" + token + "'");
        divisor = number(suffix.substr(1));
    }
    return scale * std::numbers::pi / divisor;
}

U3Angles parse_u3(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(parse_angle(item));
    if (parts.size() != 3) throw InputError("--u3 expects 'theta,phi,lambda', got '" + text + "'");
    return {parts[0], parts[1], parts[2]};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InputError("bad grid value '" + item + "'");
        }
    }
    if (grid.empty()) throw InputError("empty noise grid");
    return grid;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

Json u3_to_json(const std::vector<U3Angles>& prep) {
    Json out = Json::array();
    for (const auto& a : prep) out.push_back({a.theta, a.phi, a.lambda});
    return out;
}

Json message_parameters(const MessageSpec& msg) {
    Json j = {{"protocol", protocol_name(msg.protocol)}};
    if (msg.prep) {
        j["u3"] = u3_to_json(*msg.prep);
    } else {
        j["message"] = state_to_json(msg.state)["amplitudes"];
    }
    return j;
}

}  // namespace

uint64_t resolve_seed(std::optional<uint64_t> flag, uint64_t fallback) {
    if (flag) return *flag;
    if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
        try {
            size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError(std::string(kSeedEnvVar) + " is not an unsigned integer");
    }
    return fallback;
}

MessageSpec default_message(Protocol protocol) {
    const U3Angles plus{std::numbers::pi / 2, 0.0, 0.0};
    return message_from_u3(protocol, protocol == Protocol::Single ? std::vector<U3Angles>{plus}
                                                                  : std::vector<U3Angles>{plus, plus});
}

MessageSpec message_from_u3(Protocol protocol, std::vector<U3Angles> prep) {
    StateVector state = prepared_message(protocol, prep);
    return {protocol, std::move(prep), std::move(state)};
}

MessageSpec message_from_json(Protocol protocol, const Json& j) {
    try {
        StateVector s = protocol == Protocol::Single ? single_message_from_json(j).state()
                                                     : two_message_from_json(j).state();
        return {protocol, std::nullopt, std::move(s)};
    } catch (const InputError&) {
        throw;
    } catch (const ArgumentError& e) {
        throw InputError(e.what());
    }
}

ProtocolRun build_protocol_run(const MessageSpec& msg, bool deferred) {
    if (msg.prep) {
        Circuit c = teleport_pipeline_circuit(msg.protocol, *msg.prep);
        if (!deferred) {
            // The pipeline ends with the deferred corrections; drop them.
            const size_t extra = msg.protocol == Protocol::Single ? 2 : 4;
            c.resize(c.size() - extra);
        }
        return {StateVector::zero(joint_qubit_count(msg.protocol)), std::move(c)};
    }
    const bool single = msg.protocol == Protocol::Single;
    const int offset = single ? 1 : 2;
    Circuit c;
    for (Gate g : single ? channel_3q_circuit() : channel_4q_circuit()) {
        g.target += offset;
        for (auto& ctl : g.controls) ctl.qubit += offset;
        c.push_back(std::move(g));
    }
    for (const auto& g : protocol_circuit(msg.protocol, deferred)) c.push_back(g);
    StateVector initial = msg.state.tensor(StateVector::zero(single ? 3 : 4));
    return {std::move(initial), std::move(c)};
}

CompareReport compare_histograms(const ShotHistogram& a, const ShotHistogram& b) {
    if (a.n_qubits != b.n_qubits) {
        throw InputError("histograms cover different key universes (" + std::to_string(a.n_qubits) + " vs " +
                         std::to_string(b.n_qubits) + " bits)");
    }
    if (a.shots == 0 || b.shots == 0) throw InputError("cannot compare empty histograms");
    std::set<std::string> keys;
    for (const auto& [k, _] : a.counts) keys.insert(k);
    for (const auto& [k, _] : b.counts) keys.insert(k);
    CompareReport r;
    for (const auto& k : keys) {
        const double d = b.frequency(k) - a.frequency(k);
        r.deltas[k] = d;
        r.total_variation += std::abs(d);
    }
    r.total_variation /= 2.0;
    return r;
}

ShotHistogram histogram_from_document(const Json& j) {
    if (j.is_object() && j.contains("output_kind")) {
        const ResultEnvelope e = envelope_from_json(j);
        if (const auto* h = std::get_if<ShotHistogram>(&e.outputs)) return *h;
        if (const auto* t = std::get_if<TeleportSummary>(&e.outputs)) return t->histogram;
        throw InputError("document does not contain a histogram");
    }
    return histogram_from_json(j);
}

// ---------------------------------------------------------------------------

ResultEnvelope cmd_channel(const std::string& kind, const std::optional<Hypergraph>& hypergraph) {
    Json params = {{"kind", kind}};
    if (hypergraph) {
        params["hypergraph"] = hypergraph_to_json(*hypergraph);
        StateVector s = build_hypergraph_state(*hypergraph);
        return {"channel", params, 0, StateOutput{std::move(s), {}, {}}};
    }
    if (kind != "3q" && kind != "4q") throw InputError("--kind must be 3q or 4q (or pass --hypergraph)");
    const ChannelState ch = kind == "3q" ? build_channel_3q() : build_channel_4q();
    return {"channel", params, 0, StateOutput{ch.state, ch.alice_qubits, ch.bob_qubits}};
}

ResultEnvelope cmd_teleport(const MessageSpec& msg, uint64_t shots, uint64_t seed,
                            const std::optional<NoiseModel>& noise) {
    if (shots == 0) throw InputError("--shots must be positive");
    NoiseModel model = noise.value_or(NoiseModel{});
    model.seed = seed;

    const ProtocolRun run = build_protocol_run(msg, false);
    ShotHistogram hist = noisy_run(run.circuit, run.initial, model, shots).marginal(alice_qubits(msg.protocol));

    std::vector<TeleportOutcome> branches;
    if (msg.protocol == Protocol::Single) {
        branches = teleport_single({msg.state[0], msg.state[1]}, EnumerateAll{});
    } else {
        branches = teleport_two({msg.state[0], msg.state[1], msg.state[2], msg.state[3]}, EnumerateAll{});
    }
    TeleportSummary summary{std::move(hist), {}};
    for (const auto& b : branches) {
        std::string correction;
        for (size_t i = 0; i < b.applied_correction.size(); ++i) {
            if (i) correction += " ";
            correction += to_string(b.applied_correction[i]);
        }
        summary.branches.push_back(
            {b.alice_bits, b.probability, correction, state_fidelity(b.bob_state_corrected, msg.state)});
    }

    Json params = message_parameters(msg);
    params["shots"] = shots;
    if (noise) params["noise"] = noise_to_json(model);
    return {"teleport", params, seed, std::move(summary)};
}

ResultEnvelope cmd_tomo(const MessageSpec& msg, const std::optional<StateVector>& state, TomographyMode mode,
                        uint64_t shots, uint64_t seed, const std::optional<NoiseModel>& noise, bool psd) {
    if (shots == 0) throw InputError("--shots must be positive");
    if (noise && mode == TomographyMode::Exact) throw InputError("--noise requires --mode sampled");
    const bool sampled = mode == TomographyMode::Sampled;
    Json params = {{"mode", sampled ? "sampled" : "exact"}, {"psd_projection", psd}};
    if (sampled) params["shots"] = shots;
    TomographyOptions opts{shots, seed, psd};

    if (state) {
        if (state->num_qubits() > kMaxTomographyQubits) throw InputError("tomography supports at most 4 qubits");
        params["target"] = "state";
        std::optional<DensityMatrix> rho;
        if (!noise) {
            rho = tomograph_state(*state, mode, opts);
        } else {
            std::vector<int> all;
            for (int q = 0; q < state->num_qubits(); ++q) all.push_back(q);
            NoiseModel model = *noise;
            params["noise"] = noise_to_json(model);
            rho = tomograph_with_runner(
                state->num_qubits(),
                [&](const MeasurementSetting& s, uint64_t n_shots, uint64_t setting_seed) {
                    NoiseModel m = model;
                    m.seed = setting_seed;
                    return noisy_run(s.rotation(all), *state, m, n_shots);
                },
                opts);
        }
        FidelityReport f = fidelity(theoretical_density(*state), *rho);
        return {"tomo", params, seed, TomographyOutput{std::move(*rho), f}};
    }

    params["target"] = "teleported";
    params.update(message_parameters(msg));
    const auto bob = bob_qubits(msg.protocol);
    std::optional<DensityMatrix> rho;
    if (!sampled) {
        ProtocolRun run = build_protocol_run(msg, true);
        apply_circuit(run.initial, run.circuit);
        rho = tomograph_exact(reduced_density(run.initial, bob), psd);
    } else {
        const ProtocolRun run = build_protocol_run(msg, true);
        NoiseModel model = noise.value_or(NoiseModel{});
        if (noise) params["noise"] = noise_to_json(model);
        rho = tomograph_with_runner(
            static_cast<int>(bob.size()),
            [&](const MeasurementSetting& s, uint64_t n_shots, uint64_t setting_seed) {
                Circuit c = run.circuit;
                for (const auto& g : s.rotation(bob)) c.push_back(g);
                NoiseModel m = model;
                m.seed = setting_seed;
                return noisy_run(c, run.initial, m, n_shots).marginal(bob);
            },
            opts);
    }
    FidelityReport f = fidelity(theoretical_density(msg.state), *rho);
    return {"tomo", params, seed, TomographyOutput{std::move(*rho), f}};
}

ResultEnvelope cmd_fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e) {
    if (rho_t.dim() != rho_e.dim()) throw InputError("density matrices have different dimensions");
    return {"fidelity", Json::object(), 0, fidelity(rho_t, rho_e)};
}

ResultEnvelope cmd_compare(const ShotHistogram& a, const ShotHistogram& b) {
    Json params = {{"shots_a", a.shots}, {"shots_b", b.shots}, {"n", a.n_qubits}};
    return {"compare", params, 0, compare_histograms(a, b)};
}

ResultEnvelope cmd_sweep(const MessageSpec& msg, const std::vector<double>& grid, uint64_t shots, uint64_t seed,
                         int repeats, double readout_flip) {
    if (!msg.prep) throw InputError("sweep needs a U3-prepared message (--u3)");
    if (shots == 0) throw InputError("--shots must be positive");
    try {
        SweepTable rows = fidelity_vs_noise(msg.protocol, *msg.prep, grid, shots, seed, repeats, readout_flip);
        Json params = message_parameters(msg);
        params.update(
            Json{{"grid", grid}, {"shots", shots}, {"repeats", repeats}, {"readout_flip", readout_flip}});
        return {"sweep", params, seed, std::move(rows)};
    } catch (const InputError&) {
        throw;
    } catch (const ArgumentError& e) {
        throw InputError(e.what());
    }
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hypergraph-state teleportation simulator"};
    app.name("hyperteleport");
    app.require_subcommand(1);

    std::optional<uint64_t> seed_flag;
    uint64_t shots = kDefaultShots;
    std::string out_path;
    std::string format = "json";
    std::string noise_path;
    std::string mode = "exact";
    std::string hypergraph_path;
    std::string kind;
    std::string protocol = "single";
    std::string message_path;
    std::vector<std::string> u3_specs;
    std::string state_path;
    bool psd = false;
    std::string grid_spec = "0,0.02,0.05,0.1,0.15,0.2";
    int repeats = 1;
    double readout = 0.0;
    std::string rho_t_path, rho_e_path, hist_a_path, hist_b_path;

    auto common = [&](CLI::App* sub, bool with_shots) {
        sub->add_option("--seed", seed_flag, "Master RNG seed (falls back to $HYPERTELEPORT_SEED)");
        sub->add_option("--out", out_path, "Write the result here instead of stdout");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        if (with_shots) sub->add_option("--shots", shots, "Shots per circuit (default 8192)");
    };
    auto message_opts = [&](CLI::App* sub) {
        sub->add_option("--protocol", protocol, "single or two")->check(CLI::IsMember({"single", "two"}));
        sub->add_option("--message", message_path, "Message amplitudes as JSON");
        sub->add_option("--u3", u3_specs, "U3 angles 'theta,phi,lambda' per message qubit");
    };

    auto* channel = app.add_subcommand("channel", "Build a teleportation channel or hypergraph state");
    common(channel, false);
    channel->add_option("--kind", kind, "3q or 4q");
    channel->add_option("--hypergraph", hypergraph_path, "Hypergraph JSON {\"n\":..,\"edges\":[..]}");

    auto* teleport = app.add_subcommand("teleport", "Run a teleportation experiment");
    common(teleport, true);
    message_opts(teleport);
    teleport->add_option("--noise", noise_path, "Noise model JSON");

    auto* tomo = app.add_subcommand("tomo", "State tomography of a teleported or stored state");
    common(tomo, true);
    message_opts(tomo);
    tomo->add_option("--target", kind, "teleported (default) or state");
    tomo->add_option("--state", state_path, "State JSON to tomograph");
    tomo->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
    tomo->add_option("--noise", noise_path, "Noise model JSON (sampled mode)");
    tomo->add_flag("--psd", psd, "Clip negative eigenvalues of the reconstruction");

    auto* fid = app.add_subcommand("fidelity", "Uhlmann fidelity between two stored density matrices");
    common(fid, false);
    fid->add_option("rho_t", rho_t_path, "Theoretical density matrix JSON")->required();
    fid->add_option("rho_e", rho_e_path, "Experimental density matrix JSON")->required();

    auto* compare = app.add_subcommand("compare", "Compare two histograms");
    common(compare, false);
    compare->add_option("hist_a", hist_a_path, "First histogram JSON")->required();
    compare->add_option("hist_b", hist_b_path, "Second histogram JSON")->required();

    auto* sweep = app.add_subcommand("sweep", "Teleport-and-tomograph fidelity across gate error rates");
    common(sweep, true);
    message_opts(sweep);
    sweep->add_option("--grid", grid_spec, "Comma-separated ascending gate error probabilities");
    sweep->add_option("--repeats", repeats, "Independent runs per grid point");
    sweep->add_option("--readout", readout, "Readout flip probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        const Protocol proto = parse_protocol(protocol);
        auto load_message = [&]() -> MessageSpec {
            if (!message_path.empty() && !u3_specs.empty()) throw InputError("use either --message or --u3");
            if (!message_path.empty()) return message_from_json(proto, read_json_file(message_path));
            if (!u3_specs.empty()) {
                std::vector<U3Angles> prep;
                for (const auto& s : u3_specs) prep.push_back(parse_u3(s));
                const size_t want = proto == Protocol::Single ? 1 : 2;
                if (prep.size() != want) {
                    throw InputError("--u3 must be given " + std::to_string(want) + " time(s) for this protocol");
                }
                return message_from_u3(proto, std::move(prep));
            }
            return default_message(proto);
        };
        auto load_noise = [&]() -> std::optional<NoiseModel> {
            if (noise_path.empty()) return std::nullopt;
            return noise_from_json(read_json_file(noise_path));
        };

        std::optional<ResultEnvelope> result;
        if (channel->parsed()) {
            if (!hypergraph_path.empty()) {
                result = cmd_channel("hypergraph", hypergraph_from_json(read_json_file(hypergraph_path)));
            } else {
                result = cmd_channel(kind.empty() ? "3q" : kind, std::nullopt);
            }
        } else if (teleport->parsed()) {
            const auto noise = load_noise();
            const uint64_t seed = resolve_seed(seed_flag, noise ? noise->seed : 0);
            result = cmd_teleport(load_message(), shots, seed, noise);
        } else if (tomo->parsed()) {
            const auto noise = load_noise();
            const uint64_t seed = resolve_seed(seed_flag, noise ? noise->seed : 0);
            std::optional<StateVector> state;
            if (kind == "state" || !state_path.empty()) {
                if (state_path.empty()) throw InputError("--target state needs --state <file>");
                state = state_from_json(read_json_file(state_path));
            } else if (!kind.empty() && kind != "teleported") {
                throw InputError("--target must be 'teleported' or 'state'");
            }
            const MessageSpec msg = state ? default_message(proto) : load_message();
            result = cmd_tomo(msg, state, mode == "sampled" ? TomographyMode::Sampled : TomographyMode::Exact, shots,
                              seed, noise, psd);
        } else if (fid->parsed()) {
            result = cmd_fidelity(density_from_json(read_json_file(rho_t_path)),
                                  density_from_json(read_json_file(rho_e_path)));
        } else if (compare->parsed()) {
            result = cmd_compare(histogram_from_document(read_json_file(hist_a_path)),
                                 histogram_from_document(read_json_file(hist_b_path)));
        } else if (sweep->parsed()) {
            const uint64_t seed = resolve_seed(seed_flag);
            MessageSpec msg = load_message();
            result = cmd_sweep(msg, parse_grid(grid_spec), shots, seed, repeats, readout);
        }

        const std::string text = format == "csv" ? envelope_to_csv(*result) : dump(envelope_to_json(*result));
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw InputError("cannot write '" + out_path + "'");
            f << text;
            if (!f.flush()) throw InputError("failed writing '" + out_path + "'");
            out << "wrote " << out_path << "\n";
        }
        if (const auto* fr = std::get_if<FidelityReport>(&result->outputs)) {
            (out_path.empty() ? err : out)
                << "F = " << format_fidelity(fr->value) << " (clamped: " << (fr->clamped ? "yes" : "no")
                << ", min eigenvalue of rho_e: " << fr->min_eigenvalue_e << ")\n";
        }
        return kExitOk;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace hyperteleport::cli
