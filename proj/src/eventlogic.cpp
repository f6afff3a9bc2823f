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

#include "qdt/eventlogic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qdt/error.hpp"
#include "qdt/random.hpp"

namespace qdt {

namespace {

constexpr double min_perturbed_gap = 1e-12;

void require_projector(const EventOperator &e, const Tolerance &tol) {
    require(e.is_projector_kind(), "event is not a projector");
    const ComplexMatrix &m = e.matrix();
    require((m * m - m).norm() <= tol.eps_equality, "event is not a projector");
}

void require_same_space(const EventOperator &p, const EventOperator &q) {
    require(p.dimension() == q.dimension(), "events act on different spaces");
}

} // namespace

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::projector:
        return "projector";
    case EventKind::inconclusive:
        return "inconclusive";
    case EventKind::prospect:
        return "prospect";
    case EventKind::union_of:
        return "union";
    }
    return "unknown";
}

EventOperator::EventOperator(HilbertSpace space, const ComplexMatrix &m,
                             EventKind kind, const Tolerance &tol)
    : space_(std::move(space)), kind_(kind) {
    validate_matrix(m);
    require(m.rows() == m.cols() &&
                static_cast<std::size_t>(m.rows()) == space_.dimension(),
            "event operator does not match the space dimension");
    require(hermiticity_defect(m) <= tol.eps_hermitian,
            "event operator is not Hermitian");
    matrix_ = hermitian_part(m);
    const auto values = eig_hermitian(matrix_, tol).values;
    require(values.front() >= -tol.eps_psd && values.back() <= 1.0 + tol.eps_psd,
            "event operator spectrum outside [0, 1]");
    if (is_projector_kind()) {
        require((matrix_ * matrix_ - matrix_).norm() <= tol.eps_equality,
                "projector event is not idempotent");
    }
}

EventOperator projector(const HilbertSpace &space,
                        std::span<const std::size_t> indices, EventKind kind) {
    require(!indices.empty(), "projector needs a non-empty index set");
    require(kind == EventKind::projector || kind == EventKind::union_of,
            "standard-basis events are projectors or unions");
    const auto n = static_cast<Eigen::Index>(space.dimension());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (std::size_t i : indices) {
        require(i < space.dimension(), "projector index out of range");
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return EventOperator(space, m, kind);
}

EventOperator projector(const HilbertSpace &space,
                        std::initializer_list<std::size_t> indices,
                        EventKind kind) {
    return projector(space, std::span<const std::size_t>(indices.begin(),
                                                         indices.size()),
                     kind);
}

EventOperator projector_onto(const HilbertSpace &space,
                             const ComplexMatrix &vectors,
                             const Tolerance &tol) {
    const auto n = static_cast<Eigen::Index>(space.dimension());
    if (vectors.cols() == 0) {
        return EventOperator(space, ComplexMatrix::Zero(n, n),
                             EventKind::projector, tol);
    }
    require(vectors.rows() == n, "basis vectors do not match the space");
    const ComplexMatrix q = range_basis(vectors, tol);
    return EventOperator(space, q * q.adjoint(), EventKind::projector, tol);
}

EventOperator join(const EventOperator &p, const EventOperator &q,
                   const Tolerance &tol) {
    require_same_space(p, q);
    require_projector(p, tol);
    require_projector(q, tol);
    ComplexMatrix stacked(p.matrix().rows(), 2 * p.matrix().cols());
    stacked << p.matrix(), q.matrix();
    return projector_onto(p.space(), range_basis(stacked, tol), tol);
}

EventOperator meet(const EventOperator &p, const EventOperator &q,
                   const Tolerance &tol) {
    require_same_space(p, q);
    require_projector(p, tol);
    require_projector(q, tol);
    // v lies in both ranges iff <v|(2 - P - Q)|v> = 0, and 2 - P - Q >= 0.
    const std::size_t n = p.dimension();
    const ComplexMatrix gap = 2.0 * identity(n) - p.matrix() - q.matrix();
    const EigenSystem es = eig_hermitian(gap, tol);
    Eigen::Index count = 0;
    while (count < static_cast<Eigen::Index>(n) &&
           es.values[static_cast<std::size_t>(count)] <= tol.eps_equality) {
        ++count;
    }
    return projector_onto(p.space(), es.vectors.leftCols(count), tol);
}

ComplexMatrix DegenerateEvent::projector() const {
    return subevent_vectors * subevent_vectors.adjoint();
}

DegenerateEvent degenerate_event(const ComplexMatrix &observable,
                                 double eigenvalue, const Tolerance &tol) {
    const EigenSystem es = eig_hermitian(observable, tol);
    const double scale = std::max(1.0, observable.norm());
    std::vector<Eigen::Index> cols;
    for (std::size_t k = 0; k < es.values.size(); ++k) {
        if (std::abs(es.values[k] - eigenvalue) <= tol.eps_hermitian * scale) {
            cols.push_back(static_cast<Eigen::Index>(k));
        }
    }
    require(!cols.empty(), "value is not an eigenvalue of the observable");
    DegenerateEvent ev{observable, eigenvalue,
                       ComplexMatrix(observable.rows(),
                                     static_cast<Eigen::Index>(cols.size()))};
    for (std::size_t j = 0; j < cols.size(); ++j) {
        ev.subevent_vectors.col(static_cast<Eigen::Index>(j)) =
            es.vectors.col(cols[j]);
    }
    return ev;
}

std::vector<double> default_nu_sequence() { return {1e-2, 1e-3, 1e-4}; }

ComplexMatrix default_symmetry_breaker(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_hermitian(dim, rng);
}

LiftResult lift_degeneracy(const ComplexMatrix &observable,
                           const ComplexMatrix &gamma,
                           std::span<const double> nu_sequence,
                           const DensityOperator &rho, const Tolerance &tol) {
    require(observable.rows() == gamma.rows() &&
                observable.cols() == gamma.cols() &&
                static_cast<std::size_t>(observable.rows()) == rho.dimension(),
            "dimension mismatch between observable, perturbation and state");
    require(hermiticity_defect(gamma) <= tol.eps_hermitian,
            "perturbation is not Hermitian");
    require(nu_sequence.size() >= 2, "nu sequence needs at least two values");
    for (std::size_t k = 0; k < nu_sequence.size(); ++k) {
        require(nu_sequence[k] > 0.0, "nu values must be positive");
        require(k == 0 || nu_sequence[k] < nu_sequence[k - 1],
                "nu sequence must be strictly decreasing");
    }
    require(nu_sequence.back() <= 1e-4, "nu sequence must reach 1e-4 or below");

    const EigenSystem base = eig_hermitian(observable, tol);
    const std::size_t n = base.values.size();
    const double scale = std::max(1.0, observable.norm());

    LiftResult result;
    result.subevents.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        result.subevents[k].unperturbed_eigenvalue = base.values[k];
        const bool same = !result.groups.empty() &&
                          base.values[k] - result.groups.back().eigenvalue <=
                              tol.eps_hermitian * scale;
        if (!same) {
            result.groups.push_back({base.values[k], {}, 0.0, 0.0});
        }
        result.groups.back().members.push_back(k);
    }

    for (const double nu : nu_sequence) {
        const EigenSystem es = eig_hermitian(observable + nu * gamma, tol);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (es.values[k + 1] - es.values[k] < min_perturbed_gap) {
                throw Error("ineffective symmetry breaking");
            }
        }
        // Each group's perturbed vectors are mapped into the unperturbed
        // eigenspace and orthonormalized there (polar factor of the
        // overlap). Their nu -> 0 limits are unchanged, while the group's
        // probabilities now add up to tr(rho P) at every nu.
        for (const EigenvalueGroup &g : result.groups) {
            const auto m = static_cast<Eigen::Index>(g.members.size());
            ComplexMatrix basis(static_cast<Eigen::Index>(n), m);
            ComplexMatrix perturbed(static_cast<Eigen::Index>(n), m);
            for (Eigen::Index j = 0; j < m; ++j) {
                const auto k = static_cast<Eigen::Index>(g.members[j]);
                basis.col(j) = base.vectors.col(k);
                perturbed.col(j) = es.vectors.col(k);
            }
            const ComplexMatrix overlap = basis.adjoint() * perturbed;
            const Eigen::JacobiSVD<ComplexMatrix> svd(
                overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const ComplexMatrix aligned =
                basis * svd.matrixU() * svd.matrixV().adjoint();
            for (Eigen::Index j = 0; j < m; ++j) {
                const auto v = aligned.col(j);
                const double p =
                    (v.adjoint() * rho.matrix() * v).value().real();
                result.subevents[g.members[j]].iterates.push_back(p);
            }
        }
    }

    const double nu_prev = nu_sequence[nu_sequence.size() - 2];
    const double nu_last = nu_sequence.back();
    for (Subevent &s : result.subevents) {
        const double p_prev = s.iterates[s.iterates.size() - 2];
        const double p_last = s.iterates.back();
        s.limit = (nu_prev * p_last - nu_last * p_prev) / (nu_prev - nu_last);
        s.residual = std::abs(p_last - p_prev);
    }

    for (EigenvalueGroup &g : result.groups) {
        ComplexMatrix vecs(static_cast<Eigen::Index>(n),
                           static_cast<Eigen::Index>(g.members.size()));
        for (std::size_t j = 0; j < g.members.size(); ++j) {
            vecs.col(static_cast<Eigen::Index>(j)) =
                base.vectors.col(static_cast<Eigen::Index>(g.members[j]));
            g.limit_sum += result.subevents[g.members[j]].limit;
        }
        g.probability =
            (rho.matrix() * vecs * vecs.adjoint()).trace().real();
    }
    return result;
}

InconclusiveEvent::InconclusiveEvent(HilbertSpace space,
                                     ComplexVector amplitudes,
                                     const Tolerance &tol)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    require(static_cast<std::size_t>(amplitudes_.size()) == space_.dimension(),
            "amplitude count does not match the space dimension");
    require(amplitudes_.allFinite(), "amplitudes must be finite");
    require(std::abs(amplitudes_.squaredNorm() - 1.0) <= tol.eps_equality,
            "norm violation");
}

bool InconclusiveEvent::operationally_testable() const {
    Eigen::Index nonzero = 0;
    for (Eigen::Index a = 0; a < amplitudes_.size(); ++a) {
        if (amplitudes_(a) != Complex(0.0)) {
            ++nonzero;
        }
    }
    return nonzero <= 1;
}

Prospect::Prospect(HilbertSpace outcome_space, std::size_t outcome_index,
                   InconclusiveEvent uncertain)
    : outcome_space_(std::move(outcome_space)), outcome_index_(outcome_index),
      uncertain_(std::move(uncertain)) {
    require(outcome_index_ < outcome_space_.dimension(),
            "prospect outcome index out of range");
}

HilbertSpace Prospect::composite_space() const {
    return tensor(outcome_space_, uncertain_.space());
}

EventOperator inconclusive_operator(const InconclusiveEvent &b,
                                    const Tolerance &tol) {
    return EventOperator(b.space(), outer(b.amplitudes(), b.amplitudes()),
                         EventKind::inconclusive, tol);
}

ComplexMatrix prospect_matrix(std::size_t outcome_dimension,
                              std::size_t outcome_index,
                              const ComplexVector &amplitudes) {
    require(outcome_index < outcome_dimension,
            "prospect outcome index out of range");
    const auto n = static_cast<Eigen::Index>(outcome_dimension);
    ComplexMatrix pn = ComplexMatrix::Zero(n, n);
    pn(static_cast<Eigen::Index>(outcome_index),
       static_cast<Eigen::Index>(outcome_index)) = 1.0;
    return kron(pn, outer(amplitudes, amplitudes));
}

EventOperator prospect_operator(const Prospect &pi, const Tolerance &tol) {
    return EventOperator(pi.composite_space(),
                         prospect_matrix(pi.outcome_space().dimension(),
                                         pi.outcome_index(),
                                         pi.uncertain().amplitudes()),
                         EventKind::prospect, tol);
}

SeparabilityReport is_separable(const ComplexMatrix &op,
                                std::span<const std::size_t> dims,
                                const Tolerance &tol) {
    require(dims.size() == 2, "separability needs a bipartite factorization");
    require(op.rows() == op.cols() &&
                dimension_product(dims) == static_cast<std::size_t>(op.rows()),
            "factorization mismatch");
    SeparabilityReport r;
    for (Eigen::Index i = 0; i < op.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.cols(); ++j) {
            if (i != j && std::abs(op(i, j)) > r.witness) {
                r.witness = std::abs(op(i, j));
                r.row = static_cast<std::size_t>(i);
                r.col = static_cast<std::size_t>(j);
            }
        }
    }
    r.separable = r.witness <= tol.eps_equality;
    return r;
}

SeparabilityReport is_separable(const EventOperator &op,
                                std::span<const std::size_t> dims,
                                const Tolerance &tol) {
    return is_separable(op.matrix(), dims, tol);
}

UnityReport resolution_of_unity_check(std::span<const EventOperator> operators,
                                      const Tolerance &tol) {
    require(!operators.empty(), "resolution of unity over an empty family");
    const std::size_t n = operators.front().dimension();
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
    UnityReport r;
    for (const EventOperator &op : operators) {
        require(op.dimension() == n, "events act on different spaces");
        sum += op.matrix();
        const double lo = eig_hermitian(op.matrix(), tol).values.front();
        r.min_eigenvalues.push_back(lo);
        r.all_positive = r.all_positive && lo >= -tol.eps_psd;
    }
    r.defect = (sum - identity(n)).norm();
    r.passed = r.defect <= tol.eps_equality;
    return r;
}

} // namespace qdt
