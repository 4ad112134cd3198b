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

#include <gtest/gtest.h>

#include <random>

#include "hyperteleport/errors.h"
#include "oracles.h"

using namespace hyperteleport;

namespace {

ResultEnvelope round_trip(const ResultEnvelope& e) { return envelope_from_json(Json::parse(dump(envelope_to_json(e)))); }

}  // namespace

TEST(state_json, round_trip) {
    std::mt19937_64 rng(1);
    const auto s = StateVector::from_amplitudes(oracle::random_unit(rng, 8));
    const Json j = state_to_json(s);
    EXPECT_EQ(j["n"], 3);
    EXPECT_EQ(j["amplitudes"][2][0].get<double>(), s[2].real());
    EXPECT_EQ(state_from_json(Json::parse(j.dump())), s);
}

TEST(state_json, errors) {
    EXPECT_THROW(state_from_json(Json::parse(R"({"n": 1})")), InputError);
    EXPECT_THROW(state_from_json(Json::parse(R"({"n": 2, "amplitudes": [[1,0],[0,0]]})")), InputError);
    EXPECT_THROW(state_from_json(Json::parse(R"({"n": 1, "amplitudes": [[1,0],[1,0]]})")), InputError);
    EXPECT_THROW(state_from_json(Json::parse(R"({"n": 1, "amplitudes": [1, 0]})")), InputError);
    EXPECT_THROW(state_from_json(Json::parse(R"({"n": "one", "amplitudes": [[1,0],[0,0]]})")), InputError);
}

TEST(density_json, fixtures_load) {
    const auto e20 = oracle::load_density("rho_measured_1q.json");
    EXPECT_EQ(e20(0, 0), Amplitude(0.5380, 0));
    EXPECT_EQ(e20(0, 1), Amplitude(0.0225, -0.0195));
    const auto e23 = oracle::load_density("rho_measured_2q.json");
    EXPECT_EQ(e23.num_qubits(), 2);
    EXPECT_EQ(e23(3, 0), Amplitude(-0.0038, 0.0034));
    EXPECT_EQ(density_from_json(density_to_json(e23)), e23);
}

TEST(density_json, errors) {
    EXPECT_THROW(density_from_json(Json::parse(R"({"n": 1, "re": [[1,0],[0,0]]})")), InputError);
    EXPECT_THROW(density_from_json(Json::parse(R"({"n": 1, "re": [[1,0]], "im": [[0,0]]})")), InputError);
    EXPECT_THROW(density_from_json(Json::parse(R"({"n": 1, "re": [[1,0],[0,1]], "im": [[0,0],[0,0]]})")),
                 InputError);
    EXPECT_THROW(density_from_json(Json::parse(R"({"n": 1, "re": [[0.5,0.1],[0.2,0.5]], "im": [[0,0],[0,0]]})")),
                 InputError);
}

TEST(histogram_json, round_trip_and_csv) {
    const ShotHistogram h{2, {{"00", 3}, {"11", 5}}, 8, 42};
    EXPECT_EQ(histogram_from_json(histogram_to_json(h)), h);
    EXPECT_EQ(histogram_to_csv(h), "bitstring,count\n00,3\n11,5\n");
    EXPECT_THROW(histogram_from_json(Json::parse(R"({"n":2,"shots":9,"counts":{"00":3,"11":5}})")), InputError);
    EXPECT_THROW(histogram_from_json(Json::parse(R"({"n":2,"shots":8,"counts":{"0":8}})")), InputError);
    EXPECT_THROW(histogram_from_json(Json::parse(R"({"n":2,"shots":8,"counts":{"00":-8}})")), InputError);
    EXPECT_THROW(histogram_from_json(Json::parse(R"({"n":2,"shots":8,"counts":[8]})")), InputError);
}

TEST(hypergraph_json, round_trip) {
    const auto j = Json::parse(R"({"n": 4, "edges": [[0,1,2],[1,2,3]]})");
    const auto h = hypergraph_from_json(j);
    EXPECT_EQ(h, Hypergraph(4, {{0, 1, 2}, {1, 2, 3}}));
    EXPECT_EQ(hypergraph_to_json(h), j);
    EXPECT_EQ(hypergraph_from_json(oracle::load_json("hypergraph_4q.json")), h);
    EXPECT_THROW(hypergraph_from_json(Json::parse(R"({"n": 2, "edges": [[0,2]]})")), InputError);
    EXPECT_THROW(hypergraph_from_json(Json::parse(R"({"n": 2, "edges": [[]]})")), InputError);
}

TEST(stokes_json, round_trip) {
    StokesTensor t(2);
    t.set("XZ", 0.013);
    t.set("YY", -0.5);
    const Json j = stokes_to_json(t);
    EXPECT_EQ(j["XZ"].get<double>(), 0.013);
    EXPECT_EQ(stokes_from_json(j), t);
    Json partial = j;
    partial.erase("XZ");
    EXPECT_THROW(stokes_from_json(partial), InputError);
    EXPECT_THROW(stokes_from_json(Json::object()), InputError);
}

TEST(noise_json, round_trip) {
    const auto m = noise_from_json(Json::parse(R"({"gate_error": 0.05, "readout_flip": 0.02, "seed": 7})"));
    EXPECT_EQ(m, (NoiseModel{0.05, 0.02, 7}));
    EXPECT_EQ(noise_from_json(noise_to_json(m)), m);
    EXPECT_THROW(noise_from_json(Json::parse(R"({"gate_error": 2})")), InputError);
}

TEST(message_json, round_trip) {
    const SingleQubitMessage m{Amplitude(0.6, 0), Amplitude(0, 0.8)};
    const auto back = single_message_from_json(message_to_json(m));
    EXPECT_EQ(back.alpha, m.alpha);
    EXPECT_EQ(back.beta, m.beta);
    const TwoQubitMessage t{0.5, 0.5, Amplitude(0, 0.5), -0.5};
    const auto tb = two_message_from_json(message_to_json(t));
    EXPECT_EQ(tb.gamma, t.gamma);
    EXPECT_EQ(tb.delta, t.delta);
    EXPECT_THROW(single_message_from_json(Json::parse(R"({"alpha": [1, 0]})")), InputError);
}

TEST(envelope, round_trip_every_kind) {
    std::mt19937_64 rng(4);
    const auto s = StateVector::from_amplitudes(oracle::random_unit(rng, 4));
    const ShotHistogram h{2, {{"01", 7}, {"10", 1}}, 8, 3};
    const auto rho = oracle::load_density("rho_measured_2q.json");
    const FidelityReport f{0.5298112871579841, true, false, 0.19813};
    std::vector<Output> outputs = {
        StateOutput{s, {0}, {1}},
        h,
        TeleportSummary{h, {{"00", 0.25, "I", 1.0}, {"01", 0.75, "Z X", 0.9999999999999998}}},
        TomographyOutput{rho, f},
        TomographyOutput{rho, std::nullopt},
        f,
        CompareReport{0.125, {{"01", -0.125}, {"10", 0.125}}},
        SweepTable{{0.0, 1.0, {1.0}}, {0.05, 0.8661663469709, {0.8661663469709}}},
    };
    for (auto& out : outputs) {
        ResultEnvelope e{"test", Json{{"shots", 8}, {"grid", {0.0, 0.05}}}, 99, out};
        const auto back = round_trip(e);
        EXPECT_EQ(back, e) << dump(envelope_to_json(e));
        EXPECT_EQ(dump(envelope_to_json(back)), dump(envelope_to_json(e)));
    }
}

TEST(envelope, schema_fields) {
    const ResultEnvelope e{"fidelity", Json::object(), 0, FidelityReport{0.72281, true, false, 0.45}};
    const Json j = envelope_to_json(e);
    EXPECT_EQ(j["schema_version"], "1");
    EXPECT_EQ(j["output_kind"], "fidelity");
    EXPECT_EQ(j["outputs"]["display"], "0.7228");

    const ResultEnvelope st{"channel", Json::object(), 0, StateOutput{plus_state(1), {}, {0}}};
    const Json sj = envelope_to_json(st);
    ASSERT_EQ(sj["outputs"]["table"].size(), 2u);
    EXPECT_EQ(sj["outputs"]["table"][1]["basis"], "1");
}

TEST(envelope, parse_errors) {
    Json j = envelope_to_json({"x", Json::object(), 0, ShotHistogram{1, {{"0", 1}}, 1, 0}});
    Json bad_version = j;
    bad_version["schema_version"] = "2";
    EXPECT_THROW(envelope_from_json(bad_version), InputError);
    Json bad_kind = j;
    bad_kind["output_kind"] = "nope";
    EXPECT_THROW(envelope_from_json(bad_kind), InputError);
    Json missing = j;
    missing.erase("outputs");
    EXPECT_THROW(envelope_from_json(missing), InputError);
}

TEST(envelope, csv) {
    const ShotHistogram h{1, {{"0", 2}, {"1", 2}}, 4, 0};
    EXPECT_EQ(envelope_to_csv({"x", Json::object(), 0, h}), "bitstring,count\n0,2\n1,2\n");
    EXPECT_EQ(envelope_to_csv({"x", Json::object(), 0, SweepTable{{0.05, 0.875, {0.875}}}}),
              "gate_error,mean_fidelity\n0.05,0.875\n");
    EXPECT_EQ(envelope_to_csv({"x", Json::object(), 0, CompareReport{0.5, {{"0", -0.5}, {"1", 0.5}}}}),
              "bitstring,delta\n0,-0.5\n1,0.5\n");
    EXPECT_THROW(envelope_to_csv({"x", Json::object(), 0, FidelityReport{}}), InputError);
}

TEST(format_fidelity, four_decimals) {
    EXPECT_EQ(format_fidelity(0.72281), "0.7228");
    EXPECT_EQ(format_fidelity(1.0), "1.0000");
    EXPECT_EQ(format_fidelity(0.52975), "0.5298");
}
