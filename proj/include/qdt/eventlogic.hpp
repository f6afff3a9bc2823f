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
 * Event operators and the quantum-logic operations on them.
 *
 * Operationally testable events are projectors written in the standard
 * basis of their space (an observable's eigenbasis); events in another
 * basis are built with projector_onto() from explicit basis vectors.
 * Inconclusive events are rank-one operators |B><B| built from a
 * superposition of outcomes, and prospects pair a testable outcome of one
 * space with an inconclusive event of another.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "qdt/numkernel.hpp"
#include "qdt/qstate.hpp"

namespace qdt {

enum class EventKind { projector, inconclusive, prospect, union_of };

[[nodiscard]] std::string_view to_string(EventKind kind);

/// Hermitian operator with spectrum in [0, 1]; projector kinds are
/// additionally idempotent.
class EventOperator {
  public:
    EventOperator(HilbertSpace space, const ComplexMatrix &m, EventKind kind,
                  const Tolerance &tol = {});

    [[nodiscard]] const HilbertSpace &space() const noexcept { return space_; }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept {
        return matrix_;
    }
    [[nodiscard]] EventKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return space_.dimension();
    }
    [[nodiscard]] bool is_projector_kind() const noexcept {
        return kind_ == EventKind::projector || kind_ == EventKind::union_of;
    }

  private:
    HilbertSpace space_;
    ComplexMatrix matrix_;
    EventKind kind_;
};

/// Standard-basis projector with ones at `indices`. Pass
/// EventKind::union_of to mark the result as a union of outcomes.
[[nodiscard]] EventOperator projector(const HilbertSpace &space,
                                      std::span<const std::size_t> indices,
                                      EventKind kind = EventKind::projector);

[[nodiscard]] EventOperator projector(const HilbertSpace &space,
                                      std::initializer_list<std::size_t> indices,
                                      EventKind kind = EventKind::projector);

/// Projector onto the span of the columns of `vectors` (may be empty, giving
/// the zero event).
[[nodiscard]] EventOperator projector_onto(const HilbertSpace &space,
                                           const ComplexMatrix &vectors,
                                           const Tolerance &tol = {});

/// Projector onto the intersection and onto the sum of two ranges.
[[nodiscard]] EventOperator join(const EventOperator &p, const EventOperator &q,
                                 const Tolerance &tol = {});
[[nodiscard]] EventOperator meet(const EventOperator &p, const EventOperator &q,
                                 const Tolerance &tol = {});

/// All eigenvectors of `observable` for one (possibly degenerate)
/// eigenvalue.
struct DegenerateEvent {
    ComplexMatrix observable;
    double eigenvalue = 0.0;
    ComplexMatrix subevent_vectors; ///< orthonormal columns

    /// Sum of the subevent projectors.
    [[nodiscard]] ComplexMatrix projector() const;
};

/// Collects the eigenvectors whose eigenvalue lies within eps_hermitian
/// (relative to max(1, ||observable||)) of `eigenvalue`.
[[nodiscard]] DegenerateEvent degenerate_event(const ComplexMatrix &observable,
                                               double eigenvalue,
                                               const Tolerance &tol = {});

/// One perturbed eigenvector tracked along the nu sequence.
struct Subevent {
    double unperturbed_eigenvalue = 0.0;
    std::vector<double> iterates; ///< <v|rho|v> at each nu
    double limit = 0.0;           ///< Richardson estimate at nu -> 0
    double residual = 0.0;        ///< |p(last nu) - p(previous nu)|
};

/// A cluster of equal unperturbed eigenvalues.
struct EigenvalueGroup {
    double eigenvalue = 0.0;
    std::vector<std::size_t> members; ///< indices into LiftResult::subevents
    double probability = 0.0;         ///< tr(rho P) with P the group projector
    double limit_sum = 0.0;           ///< sum of member limits
};

struct LiftResult {
    std::vector<Subevent> subevents; ///< ascending perturbed eigenvalue
    std::vector<EigenvalueGroup> groups;
};

/// Default nu sequence used when the caller has none.
[[nodiscard]] std::vector<double> default_nu_sequence();

/// Seeded random Hermitian symmetry breaker of the given dimension.
[[nodiscard]] ComplexMatrix default_symmetry_breaker(std::size_t dim,
                                                     std::uint64_t seed);

/**
 * Splits degenerate eigenvalues of `observable` with observable + nu*gamma
 * and evaluates each perturbed eigenvector's probability along
 * `nu_sequence`, extrapolating linearly in nu from the last two points.
 * Before evaluation the perturbed vectors of a group are orthonormalized
 * inside the unperturbed eigenspace, so every iterate of a group sums to
 * the group probability.
 *
 * Throws "ineffective symmetry breaking" when some perturbed gap falls
 * below 1e-12.
 */
[[nodiscard]] LiftResult lift_degeneracy(const ComplexMatrix &observable,
                                         const ComplexMatrix &gamma,
                                         std::span<const double> nu_sequence,
                                         const DensityOperator &rho,
                                         const Tolerance &tol = {});

/// Normalized amplitude set sum_a b_a |a>.
class InconclusiveEvent {
  public:
    /// Throws "norm violation" unless sum |b_a|^2 = 1 within eps_equality.
    InconclusiveEvent(HilbertSpace space, ComplexVector amplitudes,
                      const Tolerance &tol = {});

    [[nodiscard]] const HilbertSpace &space() const noexcept { return space_; }
    [[nodiscard]] const ComplexVector &amplitudes() const noexcept {
        return amplitudes_;
    }
    /// True when at most one amplitude is nonzero.
    [[nodiscard]] bool operationally_testable() const;

  private:
    HilbertSpace space_;
    ComplexVector amplitudes_;
};

/// Outcome `outcome_index` of `outcome_space` paired with an inconclusive
/// event on a second space.
class Prospect {
  public:
    Prospect(HilbertSpace outcome_space, std::size_t outcome_index,
             InconclusiveEvent uncertain);

    [[nodiscard]] const HilbertSpace &outcome_space() const noexcept {
        return outcome_space_;
    }
    [[nodiscard]] std::size_t outcome_index() const noexcept {
        return outcome_index_;
    }
    [[nodiscard]] const InconclusiveEvent &uncertain() const noexcept {
        return uncertain_;
    }
    [[nodiscard]] HilbertSpace composite_space() const;

  private:
    HilbertSpace outcome_space_;
    std::size_t outcome_index_;
    InconclusiveEvent uncertain_;
};

/// |B><B|.
[[nodiscard]] EventOperator inconclusive_operator(const InconclusiveEvent &b,
                                                  const Tolerance &tol = {});

/// P_n (x) |b><b| with no normalization requirement on `amplitudes`, so
/// that the scaling P^2 = <pi|pi> P can be checked for any vector.
[[nodiscard]] ComplexMatrix prospect_matrix(std::size_t outcome_dimension,
                                            std::size_t outcome_index,
                                            const ComplexVector &amplitudes);

[[nodiscard]] EventOperator prospect_operator(const Prospect &pi,
                                              const Tolerance &tol = {});

struct SeparabilityReport {
    bool separable = true;
    double witness = 0.0; ///< largest off-diagonal magnitude
    std::size_t row = 0;
    std::size_t col = 0;
};

/**
 * Classifies an operator on H_A (x) H_B against the algebras of
 * standard-basis projectors: separable iff it is a combination of
 * P_n (x) P_a, i.e. diagonal in the product basis within eps_equality.
 */
[[nodiscard]] SeparabilityReport is_separable(const ComplexMatrix &op,
                                              std::span<const std::size_t> dims,
                                              const Tolerance &tol = {});
[[nodiscard]] SeparabilityReport is_separable(const EventOperator &op,
                                              std::span<const std::size_t> dims,
                                              const Tolerance &tol = {});

struct UnityReport {
    double defect = 0.0; ///< ||sum - 1||_F
    bool passed = false;
    std::vector<double> min_eigenvalues;
    bool all_positive = true;
};

[[nodiscard]] UnityReport
resolution_of_unity_check(std::span<const EventOperator> operators,
                          const Tolerance &tol = {});

} // namespace qdt
