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
 * Probability functionals over density operators and events.
 *
 * Sequential (Lueders/Wigner) forms act on a single space. Joint,
 * marginal and conditional forms act on a bipartite state rho_AB whose
 * factorization is read off the dimensions of the events involved.
 */

#pragma once

#include <optional>

#include "qdt/eventlogic.hpp"
#include "qdt/numkernel.hpp"
#include "qdt/qstate.hpp"

namespace qdt {

/// p = f + q: total probability, diagonal (utility) part and off-diagonal
/// (attraction) part.
struct ProbabilityDecomposition {
    double total = 0.0;
    double utility_factor = 0.0;
    double attraction_factor = 0.0;
};

/// A probability clamped into [0, 1]; `raw` is kept only when clamping
/// moved the value by more than 1e-12.
struct ClampedProbability {
    double value = 0.0;
    std::optional<double> raw;
};

[[nodiscard]] ClampedProbability clamp_probability(double raw);

/// A state with two projector events measured one after the other:
/// `first_event` (B_alpha) then `second_event` (A_n).
class SequentialPair {
  public:
    SequentialPair(DensityOperator rho, EventOperator first_event,
                   EventOperator second_event, const Tolerance &tol = {});

    [[nodiscard]] const DensityOperator &rho() const noexcept { return rho_; }
    [[nodiscard]] const EventOperator &first_event() const noexcept {
        return first_;
    }
    [[nodiscard]] const EventOperator &second_event() const noexcept {
        return second_;
    }
    /// The same events in the opposite order.
    [[nodiscard]] SequentialPair reversed() const;

  private:
    DensityOperator rho_;
    EventOperator first_;
    EventOperator second_;
};

/// tr(rho P), unclamped.
[[nodiscard]] double event_probability(const DensityOperator &rho,
                                       const EventOperator &p);

/// P rho P / tr(rho P). Throws "conditioning on null event" when
/// tr(rho P) <= eps_equality.
[[nodiscard]] DensityOperator luders_state(const DensityOperator &rho,
                                           const EventOperator &p_alpha,
                                           const Tolerance &tol = {});

/// tr(rho P_a P_n P_a) / tr(rho P_a).
[[nodiscard]] double luders_probability(const SequentialPair &pair,
                                        const Tolerance &tol = {});

/// tr(rho P_a P_n P_a).
[[nodiscard]] double wigner_probability(const SequentialPair &pair);

/// tr(rho P_n P_a); complex in general, hence not a probability.
[[nodiscard]] Complex kirkwood_form(const DensityOperator &rho,
                                    const EventOperator &p_n,
                                    const EventOperator &p_alpha);

/// tr(rho_AB P_A (x) P_B).
[[nodiscard]] double joint_probability(const DensityOperator &rho_ab,
                                       const EventOperator &p_a,
                                       const EventOperator &p_b);

enum class Factor { a, b };

/// tr(rho_AB P (x) 1) or tr(rho_AB 1 (x) P); the other factor's dimension
/// is rho's dimension divided by the event's.
[[nodiscard]] double marginal_probability(const DensityOperator &rho_ab,
                                          const EventOperator &event,
                                          Factor which);

/// p(A|B) = p(A (x) B) / p(B).
[[nodiscard]] double conditional_probability(const DensityOperator &rho_ab,
                                             const EventOperator &p_a,
                                             const EventOperator &p_b,
                                             const Tolerance &tol = {});

/// p(B|A) = p(A (x) B) / p(A).
[[nodiscard]] double reverse_conditional_probability(
    const DensityOperator &rho_ab, const EventOperator &p_a,
    const EventOperator &p_b, const Tolerance &tol = {});

/**
 * Prospect probability split into its diagonal and off-diagonal parts:
 *   f = sum_a |b_a|^2 <n a|rho|n a>
 *   q = sum_{a != b} b_a conj(b_b) <n b|rho|n a>
 * with total = f + q.
 */
[[nodiscard]] ProbabilityDecomposition
prospect_probability(const DensityOperator &rho_ab, const Prospect &pi);

struct UncertainConditional {
    ProbabilityDecomposition numerator;   ///< p(A_n (x) B)
    ProbabilityDecomposition denominator; ///< p(B) = f(B) + q(B)
    double value = 0.0;
};

/// p(A_n | B) for an inconclusive B, with both parts decomposed.
[[nodiscard]] UncertainConditional
conditional_under_uncertainty(const DensityOperator &rho_ab, const Prospect &pi,
                              const Tolerance &tol = {});

} // namespace qdt
