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

#ifndef NLQM_JSON_IO_H
#define NLQM_JSON_IO_H

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "nlqm/nosignal.h"
#include "nlqm/signaling.h"

namespace nlqm {

using Json = nlohmann::json;

/// Malformed or inconsistent input; the message starts with the JSON path of
/// the offending field, e.g. "scenario.state.alphas[1]: ...".
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string &path, const std::string &message)
        : std::runtime_error(path + ": " + message), path_(path) {}
    const std::string &path() const { return path_; }

   private:
    std::string path_;
};

// Schema: a complex number is [re, im] (a bare real is accepted on input),
// a vector is a list of complex numbers, and a matrix is a row-major list of
// rows.

Json complex_to_json(Complex z);
Json vector_to_json(const ComplexVector &v);
Json matrix_to_json(const ComplexMatrix &m);
Json bloch_to_json(const BlochPoint &p);

Complex parse_complex(const Json &j, const std::string &path);
ComplexVector parse_vector(const Json &j, const std::string &path);
ComplexMatrix parse_matrix(const Json &j, const std::string &path);

Json to_json(const PureState &s);
Json to_json(std::span<const PureState> states);
Json to_json(const EntangledState &s);
Json to_json(const Ensemble &e);
/// Only quadratic and power observables have a descriptor; others throw
/// PreconditionError.
Json to_json(const FunctionalObservable &f);
Json to_json(const Scenario &sc);
Json to_json(const SignalReport &r);
Json to_json(const ChannelReport &r);
Json to_json(const Certificate &c);

PureState parse_pure_state(const Json &j, const std::string &path);
std::vector<PureState> parse_states(const Json &j, const std::string &path);
/// {"dim_a", "dim_b", "alphas", "alice_basis", "bob_states"}
EntangledState parse_entangled(const Json &j, const std::string &path);
/// {"members": [{"weight": w, "state": [...]}, ...]}
Ensemble parse_ensemble(const Json &j, const std::string &path);
/// {"kind": "quadratic", "F": M} | {"kind": "power", "P": M, "k": k}
FunctionalObservable parse_observable(const Json &j, const std::string &path);
/// {"state", "basis_a", "basis_a_prime", "observable"}
Scenario parse_scenario(const Json &j, const std::string &path);

}  // namespace nlqm

#endif  // NLQM_JSON_IO_H
