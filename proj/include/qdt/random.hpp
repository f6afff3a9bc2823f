// Copyright 2026 The qdt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "qdt/numkernel.hpp"
#include "qdt/qstate.hpp"

namespace qdt {

/// Every random helper takes its generator explicitly; there is no global
/// random state.
using Rng = std::mt19937_64;

/// Independent standard complex Gaussian entries (variance 1/2 per part).
[[nodiscard]] ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols,
                                           Rng &rng);

/// G G^dagger / tr(G G^dagger) with G Ginibre.
[[nodiscard]] DensityOperator random_density(std::size_t dim, Rng &rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
[[nodiscard]] UnitaryOperator random_unitary(std::size_t dim, Rng &rng);

/// Normalized vector with Gaussian amplitudes.
[[nodiscard]] StateVector random_state(std::size_t dim, Rng &rng);

/// (G + G^dagger) / 2.
[[nodiscard]] ComplexMatrix random_hermitian(std::size_t dim, Rng &rng);

} // namespace qdt
