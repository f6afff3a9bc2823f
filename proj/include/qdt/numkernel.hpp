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
 * Dense complex-matrix kernel: tensor products, partial traces, Hermitian
 * eigendecomposition and column-space bases. Everything above this layer
 * (states, events, channels, decision layer) is written against these
 * primitives.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdt {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

/// Largest total dimension any operator may have.
inline constexpr std::size_t max_dimension = 4096;

/// Numerical tolerances shared by every validity check.
struct Tolerance {
    double eps_hermitian = 1e-9;
    double eps_psd = 1e-9;
    double eps_equality = 1e-10;

    /// Throws unless every value lies in (0, 1e-3].
    void validate() const;
};

/// Throws unless `m` is non-empty, finite and within `max_dimension`.
void validate_matrix(const ComplexMatrix &m);

[[nodiscard]] ComplexMatrix identity(std::size_t n);
[[nodiscard]] ComplexMatrix dagger(const ComplexMatrix &m);
[[nodiscard]] Complex trace(const ComplexMatrix &m);
[[nodiscard]] double frobenius_norm(const ComplexMatrix &m);

/// ||m - m^dagger||_F, or +infinity for non-square input.
[[nodiscard]] double hermiticity_defect(const ComplexMatrix &m);

/// (m + m^dagger) / 2.
[[nodiscard]] ComplexMatrix hermitian_part(const ComplexMatrix &m);

/// Diagonal matrix from real entries.
[[nodiscard]] ComplexMatrix diagonal(std::span<const double> entries);

/// Outer product |a><b|.
[[nodiscard]] ComplexMatrix outer(const ComplexVector &a,
                                  const ComplexVector &b);

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
[[nodiscard]] ComplexMatrix kron(const ComplexMatrix &a,
                                 const ComplexMatrix &b);

/// Kronecker product of a list of factors, left to right.
[[nodiscard]] ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

/**
 * Reduced matrix over the factors listed in `keep`, tracing out the rest.
 *
 * `m` acts on the tensor product of spaces with dimensions `dims` (first
 * factor most significant). Kept factors appear in ascending index order
 * in the result. An empty `keep` traces out everything and returns the
 * 1x1 matrix [trace(m)].
 */
[[nodiscard]] ComplexMatrix partial_trace(const ComplexMatrix &m,
                                          std::span<const std::size_t> dims,
                                          std::span<const std::size_t> keep);

/**
 * Reorders tensor factors. Factor k of the result is factor `order[k]` of
 * the input; `order` must be a permutation of 0..dims.size()-1.
 */
[[nodiscard]] ComplexMatrix permute_factors(const ComplexMatrix &m,
                                            std::span<const std::size_t> dims,
                                            std::span<const std::size_t> order);

/// Multiplies each column by the phase that makes its first component with
/// magnitude above `threshold` real and positive.
void normalize_column_phases(ComplexMatrix &columns, double threshold);

struct EigenSystem {
    std::vector<double> values; ///< ascending
    ComplexMatrix vectors;      ///< orthonormal columns, same order
};

/**
 * Eigendecomposition of a Hermitian matrix. Eigenvalues ascend; each
 * eigenvector's first non-negligible component is real positive.
 * Throws "not Hermitian" when ||m - m^dagger||_F > tol.eps_hermitian.
 */
[[nodiscard]] EigenSystem eig_hermitian(const ComplexMatrix &m,
                                        const Tolerance &tol = {});

/**
 * Orthonormal basis (as columns) of the column space of `m`. Singular
 * directions below tol.eps_equality * sigma_max are dropped, so a zero
 * matrix gives zero columns.
 */
[[nodiscard]] ComplexMatrix range_basis(const ComplexMatrix &m,
                                        const Tolerance &tol = {});

/// Product of `dims`; throws when it overflows `max_dimension`.
[[nodiscard]] std::size_t dimension_product(std::span<const std::size_t> dims);

} // namespace qdt
