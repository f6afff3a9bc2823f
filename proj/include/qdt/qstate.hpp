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

/**
 * @file
 * Hilbert spaces, state vectors, density operators and unitary evolution.
 * The value types here validate on construction, so holding one means
 * its invariants were checked at the tolerance it was built with.
 */

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qdt/numkernel.hpp"

namespace qdt {

/// Finite-dimensional space with one outcome label per basis vector.
class HilbertSpace {
  public:
    /// Labels default to "0", "1", ...
    explicit HilbertSpace(std::size_t dimension);
    explicit HilbertSpace(std::vector<std::string> labels);

    [[nodiscard]] std::size_t dimension() const noexcept {
        return labels_.size();
    }
    [[nodiscard]] const std::vector<std::string> &labels() const noexcept {
        return labels_;
    }

    bool operator==(const HilbertSpace &) const = default;

  private:
    std::vector<std::string> labels_;
};

/// Tensor-product space; product labels join factor labels with ','.
[[nodiscard]] HilbertSpace tensor(const HilbertSpace &a,
                                  const HilbertSpace &b);

class StateVector {
  public:
    /// Throws "norm violation" unless sum |a_i|^2 = 1 within eps_equality.
    StateVector(HilbertSpace space, ComplexVector amplitudes,
                const Tolerance &tol = {});

    [[nodiscard]] const HilbertSpace &space() const noexcept { return space_; }
    [[nodiscard]] const ComplexVector &amplitudes() const noexcept {
        return amplitudes_;
    }

  private:
    HilbertSpace space_;
    ComplexVector amplitudes_;
};

/// Outcome of checking a matrix against the density-operator invariants.
struct DensityReport {
    double hermiticity_defect = 0.0; ///< ||m - m^dagger||_F
    double min_eigenvalue = 0.0;     ///< of the Hermitian part
    double trace_defect = 0.0;       ///< |tr m - 1|
    bool hermitian = false;
    bool positive = false;
    bool unit_trace = false;

    [[nodiscard]] bool passed() const noexcept {
        return hermitian && positive && unit_trace;
    }
    /// Human-readable list of the failed checks (empty when passed).
    [[nodiscard]] std::string describe() const;
};

[[nodiscard]] DensityReport validate_density(const ComplexMatrix &m,
                                             const Tolerance &tol = {});

/// Hermitian, positive-semidefinite, unit-trace operator.
class DensityOperator {
  public:
    /// Throws with the failed checks of validate_density. The stored
    /// matrix is the exact Hermitian part of `m`.
    DensityOperator(HilbertSpace space, const ComplexMatrix &m,
                    const Tolerance &tol = {});

    /// Lenient construction for externally supplied matrices: eigenvalues
    /// in [-eps_psd, 0) are clipped to zero and the result renormalized.
    [[nodiscard]] static DensityOperator
    from_user_matrix(HilbertSpace space, const ComplexMatrix &m,
                     const Tolerance &tol = {});

    [[nodiscard]] static DensityOperator maximally_mixed(HilbertSpace space);

    [[nodiscard]] const HilbertSpace &space() const noexcept { return space_; }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept {
        return matrix_;
    }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return space_.dimension();
    }

  private:
    HilbertSpace space_;
    ComplexMatrix matrix_;
};

class UnitaryOperator {
  public:
    /// Throws unless ||U^dagger U - 1||_F <= eps_equality.
    UnitaryOperator(HilbertSpace space, ComplexMatrix m,
                    const Tolerance &tol = {});

    [[nodiscard]] static UnitaryOperator identity_on(HilbertSpace space);

    [[nodiscard]] const HilbertSpace &space() const noexcept { return space_; }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept {
        return matrix_;
    }

  private:
    HilbertSpace space_;
    ComplexMatrix matrix_;
};

/// |psi><psi|.
[[nodiscard]] DensityOperator pure_density(const StateVector &psi,
                                           const Tolerance &tol = {});

/// U rho U^dagger.
[[nodiscard]] DensityOperator evolve(const DensityOperator &rho,
                                     const UnitaryOperator &u,
                                     const Tolerance &tol = {});

/**
 * Removes every off-diagonal element of rho written in `basis` (columns):
 * sum_k |b_k><b_k| rho |b_k><b_k|. The basis must be square and
 * orthonormal within eps_equality.
 */
[[nodiscard]] DensityOperator dephase(const DensityOperator &rho,
                                      const ComplexMatrix &basis,
                                      const Tolerance &tol = {});

} // namespace qdt
