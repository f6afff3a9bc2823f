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

#include "qdt/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qdt/error.hpp"

namespace qdt {

namespace {

bool in_tolerance_range(double v) { return v > 0.0 && v <= 1e-3; }

// Row-major strides for a factor list: the last factor varies fastest.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        strides[k - 1] = strides[k] * dims[k];
    }
    return strides;
}

// Offsets into the full index generated by enumerating the listed factors
// in order (first listed factor most significant).
std::vector<std::size_t> offsets_of(std::span<const std::size_t> dims,
                                    std::span<const std::size_t> strides,
                                    const std::vector<std::size_t> &factors) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t f : factors) {
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * dims[f]);
        for (std::size_t base : offsets) {
            for (std::size_t i = 0; i < dims[f]; ++i) {
                next.push_back(base + i * strides[f]);
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

} // namespace

void Tolerance::validate() const {
    require(in_tolerance_range(eps_hermitian) && in_tolerance_range(eps_psd) &&
                in_tolerance_range(eps_equality),
            "tolerances must lie in (0, 1e-3]");
}

void validate_matrix(const ComplexMatrix &m) {
    require(m.rows() > 0 && m.cols() > 0, "matrix must be non-empty");
    require(static_cast<std::size_t>(m.rows()) <= max_dimension &&
                static_cast<std::size_t>(m.cols()) <= max_dimension,
            "matrix exceeds maximum supported dimension 4096");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Complex z = m(i, j);
            require(std::isfinite(z.real()) && std::isfinite(z.imag()),
                    "matrix entries must be finite");
        }
    }
}

ComplexMatrix identity(std::size_t n) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(n));
}

ComplexMatrix dagger(const ComplexMatrix &m) { return m.adjoint(); }

Complex trace(const ComplexMatrix &m) {
    require(m.rows() == m.cols(), "trace of a non-square matrix");
    return m.trace();
}

double frobenius_norm(const ComplexMatrix &m) { return m.norm(); }

double hermiticity_defect(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).norm();
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    require(m.rows() == m.cols(), "Hermitian part of a non-square matrix");
    return 0.5 * (m + m.adjoint());
}

ComplexMatrix diagonal(std::span<const double> entries) {
    const auto n = static_cast<Eigen::Index>(entries.size());
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i, i) = entries[static_cast<std::size_t>(i)];
    }
    return d;
}

ComplexMatrix outer(const ComplexVector &a, const ComplexVector &b) {
    return a * b.adjoint();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    validate_matrix(a);
    validate_matrix(b);
    const Eigen::Index br = b.rows();
    const Eigen::Index bc = b.cols();
    require(static_cast<std::size_t>(a.rows() * br) <= max_dimension &&
                static_cast<std::size_t>(a.cols() * bc) <= max_dimension,
            "tensor product exceeds maximum supported dimension 4096");
    ComplexMatrix out(a.rows() * br, a.cols() * bc);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    require(!factors.empty(), "tensor product of an empty factor list");
    ComplexMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = kron(out, factors[k]);
    }
    return out;
}

std::size_t dimension_product(std::span<const std::size_t> dims) {
    require(!dims.empty(), "empty factor list");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        require(d > 0, "factor dimensions must be positive");
        require(total <= max_dimension / d,
                "factorization exceeds maximum supported dimension 4096");
        total *= d;
    }
    return total;
}

ComplexMatrix partial_trace(const ComplexMatrix &m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    validate_matrix(m);
    require(m.rows() == m.cols(), "partial trace of a non-square matrix");
    std::size_t total = 0;
    try {
        total = dimension_product(dims);
    } catch (const Error &) {
        throw Error("factorization mismatch");
    }
    require(total == static_cast<std::size_t>(m.rows()),
            "factorization mismatch");

    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    require(std::adjacent_find(kept.begin(), kept.end()) == kept.end(),
            "kept factor listed twice");
    require(kept.empty() || kept.back() < dims.size(),
            "kept factor index out of range");
    std::vector<std::size_t> traced;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        if (!std::binary_search(kept.begin(), kept.end(), f)) {
            traced.push_back(f);
        }
    }

    const auto strides = strides_of(dims);
    const auto kept_off = offsets_of(dims, strides, kept);
    const auto traced_off = offsets_of(dims, strides, traced);
    const auto n = static_cast<Eigen::Index>(kept_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            Complex acc = 0.0;
            for (std::size_t t : traced_off) {
                acc += m(static_cast<Eigen::Index>(kept_off[r] + t),
                         static_cast<Eigen::Index>(kept_off[c] + t));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

ComplexMatrix permute_factors(const ComplexMatrix &m,
                              std::span<const std::size_t> dims,
                              std::span<const std::size_t> order) {
    require(m.rows() == m.cols(), "factor permutation of a non-square matrix");
    require(dimension_product(dims) == static_cast<std::size_t>(m.rows()),
            "factorization mismatch");
    require(order.size() == dims.size(), "permutation length mismatch");
    std::vector<std::size_t> check(order.begin(), order.end());
    std::sort(check.begin(), check.end());
    for (std::size_t k = 0; k < check.size(); ++k) {
        require(check[k] == k, "factor order is not a permutation");
    }

    // Enumerating the input factors in the new order yields, for each new
    // index, the matching old index.
    const auto strides = strides_of(dims);
    const auto old_index =
        offsets_of(dims, strides, std::vector<std::size_t>(order.begin(),
                                                           order.end()));
    const auto n = m.rows();
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = m(static_cast<Eigen::Index>(old_index[i]),
                          static_cast<Eigen::Index>(old_index[j]));
        }
    }
    return out;
}

void normalize_column_phases(ComplexMatrix &columns, double threshold) {
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        for (Eigen::Index r = 0; r < columns.rows(); ++r) {
            const Complex z = columns(r, c);
            if (std::abs(z) > threshold) {
                columns.col(c) *= std::conj(z) / std::abs(z);
                columns(r, c) = std::abs(z);
                break;
            }
        }
    }
}

EigenSystem eig_hermitian(const ComplexMatrix &m, const Tolerance &tol) {
    validate_matrix(m);
    require(m.rows() == m.cols(), "not Hermitian");
    if (hermiticity_defect(m) > tol.eps_hermitian) {
        throw Error("not Hermitian");
    }
    const Eigen::MatrixXcd h = hermitian_part(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecomposition did not converge", ErrorKind::numerical);
    }
    EigenSystem out;
    const auto &values = solver.eigenvalues();
    out.values.assign(values.data(), values.data() + values.size());
    out.vectors = solver.eigenvectors();
    normalize_column_phases(out.vectors, tol.eps_equality);
    return out;
}

ComplexMatrix range_basis(const ComplexMatrix &m, const Tolerance &tol) {
    validate_matrix(m);
    const Eigen::MatrixXcd dense = m;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense, Eigen::ComputeThinU);
    const auto &sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    Eigen::Index rank = 0;
    if (sigma_max > 0.0) {
        while (rank < sigma.size() &&
               sigma(rank) > tol.eps_equality * sigma_max) {
            ++rank;
        }
    }
    ComplexMatrix basis = svd.matrixU().leftCols(rank);
    normalize_column_phases(basis, tol.eps_equality);
    return basis;
}

} // namespace qdt
