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

#include "qdt/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qdt/error.hpp"

namespace qdt {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
    }
    return labels;
}

void require_same_dimension(std::size_t a, std::size_t b) {
    require(a == b, "dimension mismatch: " + std::to_string(a) + " vs " +
                        std::to_string(b));
}

} // namespace

HilbertSpace::HilbertSpace(std::size_t dimension)
    : HilbertSpace(default_labels(dimension)) {}

HilbertSpace::HilbertSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
    require(!labels_.empty(), "Hilbert space dimension must be positive");
    require(labels_.size() <= max_dimension,
            "Hilbert space exceeds maximum supported dimension 4096");
    const std::set<std::string> unique(labels_.begin(), labels_.end());
    require(unique.size() == labels_.size(), "outcome labels must be unique");
}

HilbertSpace tensor(const HilbertSpace &a, const HilbertSpace &b) {
    require(a.dimension() * b.dimension() <= max_dimension,
            "tensor product exceeds maximum supported dimension 4096");
    std::vector<std::string> labels;
    labels.reserve(a.dimension() * b.dimension());
    for (const auto &la : a.labels()) {
        for (const auto &lb : b.labels()) {
            labels.push_back(la + "," + lb);
        }
    }
    return HilbertSpace(std::move(labels));
}

StateVector::StateVector(HilbertSpace space, ComplexVector amplitudes,
                         const Tolerance &tol)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    require(static_cast<std::size_t>(amplitudes_.size()) == space_.dimension(),
            "amplitude count does not match the space dimension");
    require(amplitudes_.allFinite(), "amplitudes must be finite");
    require(std::abs(amplitudes_.squaredNorm() - 1.0) <= tol.eps_equality,
            "norm violation");
}

std::string DensityReport::describe() const {
    std::ostringstream os;
    const char *sep = "";
    if (!hermitian) {
        os << sep << "not Hermitian (defect " << hermiticity_defect << ")";
        sep = "; ";
    }
    if (!positive) {
        os << sep << "negative eigenvalue " << min_eigenvalue;
        sep = "; ";
    }
    if (!unit_trace) {
        os << sep << "trace = " << 1.0 + trace_defect;
    }
    return os.str();
}

DensityReport validate_density(const ComplexMatrix &m, const Tolerance &tol) {
    validate_matrix(m);
    require(m.rows() == m.cols(), "density matrix must be square");
    DensityReport r;
    r.hermiticity_defect = hermiticity_defect(m);
    r.hermitian = r.hermiticity_defect <= tol.eps_hermitian;
    const ComplexMatrix h = hermitian_part(m);
    // eig_hermitian on the exact Hermitian part never rejects.
    r.min_eigenvalue = eig_hermitian(h, tol).values.front();
    r.positive = r.min_eigenvalue >= -tol.eps_psd;
    // Signed so that describe() can print the actual trace.
    r.trace_defect = m.trace().real() - 1.0;
    r.unit_trace = std::abs(r.trace_defect) <= tol.eps_equality &&
                   std::abs(m.trace().imag()) <= tol.eps_equality;
    return r;
}

DensityOperator::DensityOperator(HilbertSpace space, const ComplexMatrix &m,
                                 const Tolerance &tol)
    : space_(std::move(space)) {
    require(static_cast<std::size_t>(m.rows()) == space_.dimension(),
            "density matrix does not match the space dimension");
    const DensityReport report = validate_density(m, tol);
    require(report.passed(), "invalid density operator: " + report.describe());
    matrix_ = hermitian_part(m);
}

DensityOperator DensityOperator::from_user_matrix(HilbertSpace space,
                                                  const ComplexMatrix &m,
                                                  const Tolerance &tol) {
    require(static_cast<std::size_t>(m.rows()) == space.dimension(),
            "density matrix does not match the space dimension");
    const DensityReport report = validate_density(m, tol);
    require(report.passed(), "invalid density operator: " + report.describe());
    if (report.min_eigenvalue >= 0.0) {
        return DensityOperator(std::move(space), m, tol);
    }
    EigenSystem es = eig_hermitian(hermitian_part(m), tol);
    std::vector<double> clipped(es.values);
    for (double &v : clipped) {
        v = std::max(v, 0.0);
    }
    ComplexMatrix rebuilt =
        es.vectors * diagonal(clipped) * es.vectors.adjoint();
    rebuilt /= rebuilt.trace().real();
    return DensityOperator(std::move(space), rebuilt, tol);
}

DensityOperator DensityOperator::maximally_mixed(HilbertSpace space) {
    const std::size_t n = space.dimension();
    return DensityOperator(std::move(space),
                           identity(n) / static_cast<double>(n));
}

UnitaryOperator::UnitaryOperator(HilbertSpace space, ComplexMatrix m,
                                 const Tolerance &tol)
    : space_(std::move(space)), matrix_(std::move(m)) {
    validate_matrix(matrix_);
    require(matrix_.rows() == matrix_.cols() &&
                static_cast<std::size_t>(matrix_.rows()) == space_.dimension(),
            "unitary does not match the space dimension");
    const double defect =
        (matrix_.adjoint() * matrix_ - identity(space_.dimension())).norm();
    require(defect <= tol.eps_equality, "operator is not unitary");
}

UnitaryOperator UnitaryOperator::identity_on(HilbertSpace space) {
    const std::size_t n = space.dimension();
    return UnitaryOperator(std::move(space), identity(n));
}

DensityOperator pure_density(const StateVector &psi, const Tolerance &tol) {
    return DensityOperator(psi.space(),
                           outer(psi.amplitudes(), psi.amplitudes()), tol);
}

DensityOperator evolve(const DensityOperator &rho, const UnitaryOperator &u,
                       const Tolerance &tol) {
    require_same_dimension(rho.dimension(), u.space().dimension());
    const ComplexMatrix &m = u.matrix();
    return DensityOperator(rho.space(), m * rho.matrix() * m.adjoint(), tol);
}

DensityOperator dephase(const DensityOperator &rho, const ComplexMatrix &basis,
                        const Tolerance &tol) {
    validate_matrix(basis);
    require(basis.rows() == basis.cols() &&
                static_cast<std::size_t>(basis.rows()) == rho.dimension(),
            "dephasing basis must span the space");
    const double defect =
        (basis.adjoint() * basis - identity(rho.dimension())).norm();
    require(defect <= tol.eps_equality, "dephasing basis is not orthonormal");
    const ComplexMatrix in_basis = basis.adjoint() * rho.matrix() * basis;
    const ComplexMatrix diag_only = in_basis.diagonal().asDiagonal();
    return DensityOperator(rho.space(), basis * diag_only * basis.adjoint(),
                           tol);
}

} // namespace qdt
