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

#include <cmath>
#include <limits>

namespace nlqm {

namespace {

std::string at(const std::string &path, size_t index) {
    return path + "[" + std::to_string(index) + "]";
}

std::string field(const std::string &path, const char *key) {
    return path.empty() ? std::string(key) : path + "." + key;
}

const Json &require(const Json &j, const char *key, const std::string &path) {
    if (!j.is_object()) {
        throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(field(path, key), "missing required field");
    }
    return *it;
}

const Json &require_array(const Json &j, const std::string &path) {
    if (!j.is_array()) {
        throw ConfigError(path, "expected an array");
    }
    return j;
}

int parse_int(const Json &j, const std::string &path) {
    if (!j.is_number_integer()) {
        throw ConfigError(path, "expected an integer");
    }
    return j.get<int>();
}

// Runs a domain constructor and re-labels its precondition failures with the
// JSON path that produced the inputs.
template <typename Fn>
auto with_path(const std::string &path, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(path, e.what());
    }
}

Json finite_or_null(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json states_json(const std::vector<PureState> &states) {
    return to_json(std::span<const PureState>(states));
}

struct WitnessJson {
    Json operator()(const ChordWitness &w) const {
        return {{"type", "chord"},
                {"x1", bloch_to_json(w.x1)},
                {"x2", bloch_to_json(w.x2)},
                {"x1p", bloch_to_json(w.x1p)},
                {"x2p", bloch_to_json(w.x2p)},
                {"p1", w.p1},
                {"p2", w.p2},
                {"p1p", w.p1p},
                {"p2p", w.p2p},
                {"x", bloch_to_json(w.x)},
                {"f1", w.f1},
                {"f2", w.f2},
                {"f1p", w.f1p},
                {"f2p", w.f2p},
                {"lhs", w.lhs},
                {"rhs", w.rhs},
                {"violation", w.violation}};
    }
    Json operator()(const AffineWitness &w) const {
        return {{"type", "affine"},     {"y1", bloch_to_json(w.y1)}, {"y2", bloch_to_json(w.y2)},
                {"x", bloch_to_json(w.x)}, {"p", w.p},                   {"phi_y1", w.phi_y1},
                {"phi_y2", w.phi_y2},   {"phi_x", w.phi_x},          {"violation", w.violation}};
    }
    Json operator()(const SubspaceMeasureRecord &w) const {
        return {{"type", "subspace_measure"},
                {"basis", states_json(w.basis)},
                {"mu", w.mu},
                {"mu_min", w.mu_min},
                {"mu_max", w.mu_max},
                {"basis_spread", w.basis_spread},
                {"bases_tested", w.bases_tested}};
    }
    Json operator()(const ReconstructionWitness &w) const {
        return {{"type", "reconstruction"},
                {"basis", states_json(w.basis)},
                {"mu", w.mu},
                {"trace_fp", w.trace_fp},
                {"violation", w.violation}};
    }
    Json operator()(const PositivityWitness &w) const {
        return {{"type", "positivity"}, {"min_eigenvalue", w.min_eigenvalue}, {"violation", w.violation}};
    }
};

}  // namespace

Json complex_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json vector_to_json(const ComplexVector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); i++) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        out.push_back(vector_to_json(m.row(r).transpose()));
    }
    return out;
}

Json bloch_to_json(const BlochPoint &p) {
    return Json::array({p.x, p.y, p.z});
}

Complex parse_complex(const Json &j, const std::string &path) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(path, "expected a complex number [re, im]");
    }
    Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ConfigError(path, "non-finite complex number");
    }
    return z;
}

ComplexVector parse_vector(const Json &j, const std::string &path) {
    require_array(j, path);
    if (j.empty()) {
        throw ConfigError(path, "empty vector");
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); i++) {
        v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], at(path, i));
    }
    return v;
}

ComplexMatrix parse_matrix(const Json &j, const std::string &path) {
    require_array(j, path);
    if (j.empty()) {
        throw ConfigError(path, "empty matrix");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    ComplexMatrix m(rows, rows);
    for (size_t r = 0; r < j.size(); r++) {
        ComplexVector row = parse_vector(j[r], at(path, r));
        if (row.size() != rows) {
            throw ConfigError(at(path, r), "matrix must be square (row has " + std::to_string(row.size()) +
                                               " entries, expected " + std::to_string(rows) + ")");
        }
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

Json to_json(const PureState &s) {
    return vector_to_json(s.vec());
}

Json to_json(std::span<const PureState> states) {
    Json out = Json::array();
    for (const PureState &s : states) {
        out.push_back(to_json(s));
    }
    return out;
}

Json to_json(const EntangledState &s) {
    Json alphas = Json::array();
    for (Complex a : s.alphas()) {
        alphas.push_back(complex_to_json(a));
    }
    return {{"dim_a", s.dim_a()},
            {"dim_b", s.dim_b()},
            {"alphas", alphas},
            {"alice_basis", states_json(s.alice_basis())},
            {"bob_states", states_json(s.bob_states())}};
}

Json to_json(const Ensemble &e) {
    Json members = Json::array();
    for (const EnsembleMember &m : e.members()) {
        members.push_back({{"weight", m.weight}, {"state", to_json(m.state)}});
    }
    return {{"members", members}};
}

Json to_json(const FunctionalObservable &f) {
    if (const auto *q = std::get_if<QuadraticKind>(&f.kind())) {
        return {{"kind", "quadratic"}, {"F", matrix_to_json(q->op)}};
    }
    if (const auto *p = std::get_if<PowerKind>(&f.kind())) {
        return {{"kind", "power"}, {"P", matrix_to_json(p->op)}, {"k", p->exponent}};
    }
    throw PreconditionError("observable of kind '" + f.kind_name() + "' has no JSON descriptor");
}

Json to_json(const Scenario &sc) {
    return {{"state", to_json(sc.state())},
            {"basis_a", states_json(sc.basis_a())},
            {"basis_a_prime", states_json(sc.basis_a_prime())},
            {"observable", to_json(sc.observable())}};
}

Json to_json(const SignalReport &r) {
    Json out = {{"exact_fb", r.exact_fb}, {"exact_fbprime", r.exact_fbprime}, {"gap", r.gap}};
    if (r.has_monte_carlo) {
        Json convergence = Json::array();
        for (const ConvergencePoint &c : r.convergence) {
            convergence.push_back({{"n", c.n}, {"mc_gap", c.mc_gap}, {"stderr", c.standard_error}});
        }
        out["mc_fb"] = r.mc_fb;
        out["mc_fbprime"] = r.mc_fbprime;
        out["mc_gap"] = r.mc_gap();
        out["stderr_b"] = r.stderr_b;
        out["stderr_bprime"] = r.stderr_bprime;
        out["z"] = finite_or_null(r.z);
        out["n_samples"] = r.n_samples;
        out["seed"] = r.seed;
        out["convergence"] = convergence;
    }
    return out;
}

Json to_json(const ChannelReport &r) {
    return {{"block_length", r.block_length},
            {"trials", r.trials},
            {"errors", r.errors},
            {"bit_error_rate", r.bit_error_rate},
            {"estimated_capacity_bits_per_block", r.estimated_capacity_bits_per_block},
            {"decision_threshold", r.decision_threshold},
            {"gap", r.gap},
            {"seed", r.seed}};
}

Json to_json(const Certificate &c) {
    Json witnesses = Json::array();
    for (const Witness &w : c.witnesses) {
        witnesses.push_back(std::visit(WitnessJson{}, w));
    }
    Json out = {{"method", c.method},
                {"verdict", to_string(c.verdict)},
                {"worst_violation", c.worst_violation},
                {"tolerance", c.tolerance},
                {"seed", c.seed},
                {"witnesses", witnesses}};
    if (c.reconstructed) {
        out["reconstructed_F"] = matrix_to_json(*c.reconstructed);
    }
    return out;
}

PureState parse_pure_state(const Json &j, const std::string &path) {
    ComplexVector v = parse_vector(j, path);
    return with_path(path, [&] { return PureState::from_vector(std::move(v)); });
}

std::vector<PureState> parse_states(const Json &j, const std::string &path) {
    require_array(j, path);
    std::vector<PureState> out;
    for (size_t i = 0; i < j.size(); i++) {
        out.push_back(parse_pure_state(j[i], at(path, i)));
    }
    return out;
}

EntangledState parse_entangled(const Json &j, const std::string &path) {
    const Json &alphas_json = require_array(require(j, "alphas", path), field(path, "alphas"));
    std::vector<Complex> alphas;
    for (size_t i = 0; i < alphas_json.size(); i++) {
        alphas.push_back(parse_complex(alphas_json[i], at(field(path, "alphas"), i)));
    }
    std::vector<PureState> alice = parse_states(require(j, "alice_basis", path), field(path, "alice_basis"));
    std::vector<PureState> bob = parse_states(require(j, "bob_states", path), field(path, "bob_states"));
    EntangledState s = with_path(path, [&] { return build_entangled(alphas, alice, bob); });
    for (const char *key : {"dim_a", "dim_b"}) {
        if (j.contains(key)) {
            int declared = parse_int(j[key], field(path, key));
            int actual = std::string(key) == "dim_a" ? s.dim_a() : s.dim_b();
            if (declared != actual) {
                throw ConfigError(field(path, key), "declared " + std::to_string(declared) + " but states have dim " +
                                                        std::to_string(actual));
            }
        }
    }
    return s;
}

Ensemble parse_ensemble(const Json &j, const std::string &path) {
    const std::string mpath = field(path, "members");
    const Json &members_json = require_array(require(j, "members", path), mpath);
    std::vector<EnsembleMember> members;
    for (size_t i = 0; i < members_json.size(); i++) {
        const std::string ipath = at(mpath, i);
        const Json &w = require(members_json[i], "weight", ipath);
        if (!w.is_number()) {
            throw ConfigError(field(ipath, "weight"), "expected a number");
        }
        members.push_back({w.get<double>(), parse_pure_state(require(members_json[i], "state", ipath),
                                                             field(ipath, "state"))});
    }
    return with_path(path, [&] { return Ensemble::from_members(std::move(members)); });
}

FunctionalObservable parse_observable(const Json &j, const std::string &path) {
    const Json &kind = require(j, "kind", path);
    if (!kind.is_string()) {
        throw ConfigError(field(path, "kind"), "expected a string");
    }
    const std::string k = kind.get<std::string>();
    if (k == "quadratic") {
        ComplexMatrix op = parse_matrix(require(j, "F", path), field(path, "F"));
        return with_path(field(path, "F"), [&] { return quadratic(op); });
    }
    if (k == "power") {
        ComplexMatrix op = parse_matrix(require(j, "P", path), field(path, "P"));
        int exponent = parse_int(require(j, "k", path), field(path, "k"));
        return with_path(path, [&] { return power(op, exponent); });
    }
    throw ConfigError(field(path, "kind"), "unknown observable kind '" + k + "' (expected quadratic or power)");
}

Scenario parse_scenario(const Json &j, const std::string &path) {
    EntangledState state = parse_entangled(require(j, "state", path), field(path, "state"));
    std::vector<PureState> a = parse_states(require(j, "basis_a", path), field(path, "basis_a"));
    std::vector<PureState> ap = parse_states(require(j, "basis_a_prime", path), field(path, "basis_a_prime"));
    FunctionalObservable f = parse_observable(require(j, "observable", path), field(path, "observable"));
    return with_path(path, [&] { return Scenario::make(std::move(state), std::move(a), std::move(ap), f); });
}

}  // namespace nlqm
