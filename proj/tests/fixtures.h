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

// Shared scenario builders for the test binaries.

#ifndef NLQM_TESTS_FIXTURES_H
#define NLQM_TESTS_FIXTURES_H

#include <numbers>

#include "nlqm/signaling.h"

namespace nlqm::fixture {

inline PureState plus2() {
    ComplexVector v(2);
    v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    return PureState::from_vector(v);
}

inline PureState minus2() {
    ComplexVector v(2);
    v << 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2;
    return PureState::from_vector(v);
}

inline ComplexMatrix projector0(int dim) {
    return PureState::basis(dim, 0).projector();
}

/// (|e0>|e0> + |e1>|e1>)/sqrt2 with Alice switching between Z and X bases.
inline Scenario bell_scenario(const FunctionalObservable &f) {
    const double a = 1.0 / std::numbers::sqrt2;
    std::vector<PureState> z = {PureState::basis(2, 0), PureState::basis(2, 1)};
    EntangledState state = build_entangled({a, a}, z, {PureState::basis(2, 0), PureState::basis(2, 1)});
    return Scenario::make(std::move(state), z, {plus2(), minus2()}, f);
}

inline Scenario bell_power_scenario() {
    return bell_scenario(power(projector0(2), 2));
}

}  // namespace nlqm::fixture

#endif  // NLQM_TESTS_FIXTURES_H
