// Copyright 2026 The nlqm Authors
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

#include "nlqm/json_io.h"

#include <gtest/gtest.h>

#include "fixtures.h"
#include "nlqm/plot_data.h"

using namespace nlqm;

TEST(JsonIo, ComplexRoundTrip) {
    Complex z(0.25, -1.5);
    EXPECT_EQ(parse_complex(complex_to_json(z), "z"), z);
    EXPECT_EQ(parse_complex(Json(2.0), "z"), Complex(2.0, 0.0));
    EXPECT_THROW(parse_complex(Json::array({1.0}), "z"), ConfigError);
    EXPECT_THROW(parse_complex(Json("x"), "z"), ConfigError);
}

TEST(JsonIo, MatrixRoundTripIsExact) {
    RandomStream rng(1);
    ComplexMatrix m = random_hermitian(4, rng);
    Json j = matrix_to_json(m);
    EXPECT_EQ(parse_matrix(Json::parse(j.dump()), "m"), m);
}

TEST(JsonIo, NonSquareMatrixReportsThePath) {
    Json j = Json::array({Json::array({1.0, 0.0}), Json::array({0.0})});
    try {
        parse_matrix(j, "observable.F");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.path(), "observable.F[1]");
    }
}

TEST(JsonIo, ScenarioRoundTrip) {
    Scenario sc = fixture::bell_power_scenario();
    Json j = to_json(sc);
    Scenario back = parse_scenario(Json::parse(j.dump()), "scenario");
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(exact_gap(back).gap, exact_gap(sc).gap);
}

TEST(JsonIo, ObservableKinds) {
    Json q = {{"kind", "quadratic"}, {"F", matrix_to_json(ComplexMatrix::Identity(2, 2))}};
    EXPECT_TRUE(parse_observable(q, "observable").is_quadratic());
    Json p = {{"kind", "power"}, {"P", matrix_to_json(fixture::projector0(3))}, {"k", 3}};
    FunctionalObservable f = parse_observable(p, "observable");
    EXPECT_EQ(f.kind_name(), "power");
    EXPECT_EQ(to_json(f), p);
    EXPECT_THROW(parse_observable({{"kind", "cubic"}}, "observable"), ConfigError);
    EXPECT_THROW(to_json(custom(2, [](const ComplexVector &) { return 0.0; })), PreconditionError);
}

TEST(JsonIo, InvalidPhysicsIsReportedWithPath) {
    Json j = to_json(fixture::bell_power_scenario());
    j["state"]["alphas"][0] = Json::array({0.5, 0.0});
    try {
        parse_scenario(j, "scenario");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.path(), "scenario.state");
    }
    Json k = to_json(fixture::bell_power_scenario());
    k["observable"]["F"] = k["observable"]["P"];
    k["observable"]["kind"] = "quadratic";
    k["observable"]["F"][0][1] = Json::array({0.5, 0.0});
    EXPECT_THROW(parse_scenario(k, "scenario"), ConfigError);
    Json m = to_json(fixture::bell_power_scenario());
    m.erase("basis_a");
    try {
        parse_scenario(m, "scenario");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.path(), "scenario.basis_a");
    }
}

TEST(JsonIo, EnsembleRoundTrip) {
    Ensemble e = Ensemble::from_members({{0.25, PureState::basis(2, 0)}, {0.75, fixture::plus2()}});
    Ensemble back = parse_ensemble(to_json(e), "ensemble");
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back.members()[1].weight, 0.75);
    EXPECT_THROW(parse_ensemble({{"members", Json::array()}}, "ensemble"), ConfigError);
}

TEST(JsonIo, SignalReportFields) {
    SignalReport r = monte_carlo_report(fixture::bell_power_scenario(), 1000, {1, 1});
    Json j = to_json(r);
    for (const char *key : {"exact_fb", "exact_fbprime", "gap", "mc_fb", "mc_fbprime", "stderr_b", "stderr_bprime",
                            "z", "n_samples", "seed", "convergence"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    // Letter 1 has zero spread, letter 0 does not: z is finite.
    EXPECT_TRUE(j["z"].is_number());
    Json exact = to_json(exact_gap(fixture::bell_power_scenario()));
    EXPECT_FALSE(exact.contains("z"));
}

TEST(JsonIo, CertificateCarriesVerdictAndReconstruction) {
    AffinityOptions opts;
    opts.chords = 10;
    Json j = to_json(affinity_scan(power(fixture::projector0(2), 2), opts));
    EXPECT_EQ(j["verdict"], "non-quadratic");
    EXPECT_EQ(j["method"], "affinity");
    EXPECT_EQ(j["witnesses"].size(), 13u);
    EXPECT_TRUE(j.contains("reconstructed_F"));
}

TEST(PlotData, KindsAndMismatches) {
    EXPECT_EQ(parse_plot_kind("violation-histogram"), PlotKind::kViolationHistogram);
    EXPECT_EQ(to_string(PlotKind::kBloch), "bloch");
    EXPECT_THROW(parse_plot_kind("pie"), PreconditionError);

    SignalReport r = monte_carlo_report(fixture::bell_power_scenario(), 10000, {1, 1});
    std::string conv = emit_plot_data(r, PlotKind::kConvergence);
    EXPECT_EQ(conv.rfind("n,mc_gap,stderr\n", 0), 0u);
    EXPECT_THROW(emit_plot_data(r, PlotKind::kBloch), PlotKindMismatch);

    AffinityOptions opts;
    opts.chords = 5;
    Certificate aff = affinity_scan(quadratic(fixture::projector0(2)), opts);
    EXPECT_NO_THROW(emit_plot_data(aff, PlotKind::kBloch));
    std::string hist = emit_plot_data(aff, PlotKind::kViolationHistogram);
    EXPECT_EQ(std::count(hist.begin(), hist.end(), '\n'), 21);
    Certificate gle = gleason_certify(CountingObservable::wrap(power(fixture::projector0(3), 2)), {});
    EXPECT_THROW(emit_plot_data(gle, PlotKind::kBloch), PlotKindMismatch);
}

TEST(PlotData, SamplesCsv) {
    std::string csv = samples_csv({0.5, 1.0}, {0.25});
    EXPECT_EQ(csv, "letter,index,f\n0,0,0.5\n0,1,1\n1,0,0.25\n");
}
