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
 * Five-step measurement pipeline on H_A (x) H_B (x) H_M:
 *
 *   1. preparation        global unitary on the product initial state
 *   2. evolution          unitary
 *   3. B-measurement      rho -> Tr_B(rho) (x) Tr_AM(rho)
 *   4. evolution          unitary
 *   5. A-measurement      rho -> Tr_A(rho) (x) Tr_BM(rho)
 *
 * Measurement channels replace the state by the product of its marginals
 * across a cut. That map is not linear, so the channel-state dual of a
 * measurement is taken for its trace-and-replace linearization (see
 * ChoiOptions), which agrees with the channel on the state it is applied
 * to when the replacement is that state's own marginal.
 */

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdt/numkernel.hpp"
#include "qdt/qstate.hpp"

namespace qdt {

enum class ChannelKind {
    entangling_preparation,
    unitary_evolution,
    disentangling_measurement,
};

[[nodiscard]] std::string_view to_string(ChannelKind kind);

class Channel {
  public:
    [[nodiscard]] static Channel preparation(ComplexMatrix unitary,
                                             std::string label = "preparation",
                                             const Tolerance &tol = {});
    [[nodiscard]] static Channel evolution(ComplexMatrix unitary,
                                           std::string label = "evolution",
                                           const Tolerance &tol = {});
    /// Disentangles `measured_factors` from the remaining factors.
    [[nodiscard]] static Channel
    measurement(std::vector<std::size_t> measured_factors,
                std::string label = "measurement");

    [[nodiscard]] ChannelKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string &label() const noexcept { return label_; }
    [[nodiscard]] bool is_unitary() const noexcept {
        return kind_ != ChannelKind::disentangling_measurement;
    }
    /// Throws for measurement channels.
    [[nodiscard]] const ComplexMatrix &unitary() const;
    /// Sorted; empty for unitary channels.
    [[nodiscard]] const std::vector<std::size_t> &measured_factors() const
        noexcept {
        return measured_;
    }

  private:
    Channel(ChannelKind kind, ComplexMatrix unitary,
            std::vector<std::size_t> measured, std::string label);

    ChannelKind kind_;
    ComplexMatrix unitary_;
    std::vector<std::size_t> measured_;
    std::string label_;
};

/// Applies `c` to a state on the tensor product of spaces with `dims`.
[[nodiscard]] DensityOperator apply_channel(const DensityOperator &state,
                                            const Channel &c,
                                            std::span<const std::size_t> dims,
                                            const Tolerance &tol = {});

/// ||rho - Tr_S(rho) (x) Tr_{S^c}(rho)||_F for the cut S | S^c.
[[nodiscard]] double product_defect(const ComplexMatrix &rho,
                                    std::span<const std::size_t> dims,
                                    std::span<const std::size_t> measured);

enum class MeasurementDual {
    /// X -> Tr_S(X) (x) sigma_S: the measured side is replaced, the rest
    /// keeps its correlations with the reference.
    replace_measured,
    /// X -> tr(X) sigma_{S^c} (x) sigma_S: both sides replaced.
    replace_both,
};

struct ChoiOptions {
    MeasurementDual mode = MeasurementDual::replace_measured;
    /// Replacement for the measured side; maximally mixed when absent.
    std::optional<ComplexMatrix> measured_state;
    /// Replacement for the complement (replace_both only); maximally mixed
    /// when absent.
    std::optional<ComplexMatrix> complement_state;
};

/// Linear map whose dual state choi_state() returns, evaluated on any
/// square `x` (not necessarily a state).
[[nodiscard]] ComplexMatrix apply_linear_map(const Channel &c,
                                             std::span<const std::size_t> dims,
                                             const ChoiOptions &options,
                                             const ComplexMatrix &x);

/**
 * Normalized channel-state dual (id (x) C)(|Omega><Omega|) on
 * reference (x) system, |Omega> = sum_i |i>|i> / sqrt(D). Validated as a
 * density operator, which certifies complete positivity and trace
 * preservation of the (linearized) channel.
 */
[[nodiscard]] DensityOperator choi_state(const Channel &c,
                                         std::span<const std::size_t> dims,
                                         const ChoiOptions &options = {},
                                         const Tolerance &tol = {});

/// The five-channel procedure with bookkeeping timestamps t1 < ... < t5.
class MeasurementPipeline {
  public:
    MeasurementPipeline(std::array<std::size_t, 3> dims,
                        std::vector<Channel> steps,
                        std::vector<double> timestamps);

    /// Standard template: measured factors {B} at step 3 and {A} at step 5.
    [[nodiscard]] static MeasurementPipeline
    standard(std::array<std::size_t, 3> dims, ComplexMatrix preparation,
             ComplexMatrix first_evolution, ComplexMatrix second_evolution,
             std::vector<double> timestamps = {1.0, 2.0, 3.0, 4.0, 5.0},
             const Tolerance &tol = {});

    [[nodiscard]] const std::array<std::size_t, 3> &dims() const noexcept {
        return dims_;
    }
    [[nodiscard]] const std::vector<Channel> &steps() const noexcept {
        return steps_;
    }
    [[nodiscard]] const std::vector<double> &timestamps() const noexcept {
        return timestamps_;
    }
    [[nodiscard]] std::size_t total_dimension() const noexcept {
        return dims_[0] * dims_[1] * dims_[2];
    }

  private:
    std::array<std::size_t, 3> dims_;
    std::vector<Channel> steps_;
    std::vector<double> timestamps_;
};

struct Trajectory {
    DensityOperator initial;            ///< rho_A (x) rho_B (x) rho_M
    std::vector<DensityOperator> steps; ///< state after each channel
};

[[nodiscard]] Trajectory
run_pipeline(const MeasurementPipeline &p,
             const std::array<DensityOperator, 3> &initial,
             const Tolerance &tol = {});

/// Dual state of each step, with measurement steps linearized around the
/// marginal they actually produce.
[[nodiscard]] std::vector<DensityOperator>
pipeline_choi_states(const MeasurementPipeline &p, const Trajectory &t,
                     const Tolerance &tol = {});

struct PipelineAudit {
    std::vector<double> trace_defects;     ///< per step, |tr - 1|
    double post_b_product_defect = 0.0;    ///< after step 3, (AM|B) cut
    double post_a_product_defect = 0.0;    ///< after step 5, (A|BM) cut
    std::vector<double> choi_min_eigenvalues;
};

[[nodiscard]] PipelineAudit audit_pipeline(const MeasurementPipeline &p,
                                           const Trajectory &t,
                                           const Tolerance &tol = {});

/// Tr_M of the final state: the composite state rho_AB of the static
/// picture.
[[nodiscard]] DensityOperator composite_state(const MeasurementPipeline &p,
                                              const Trajectory &t,
                                              const Tolerance &tol = {});

/// Pipeline conditional p(A_n | B_alpha) on the final composite state next
/// to the Lueders transition probability evaluated on the pre-measurement
/// composite state. No agreement threshold is implied.
struct LudersComparison {
    double pipeline_probability = 0.0;
    double luders_probability = 0.0;
    double difference = 0.0;
};

[[nodiscard]] LudersComparison
compare_with_luders(const MeasurementPipeline &p, const Trajectory &t,
                    std::size_t outcome_a, std::size_t outcome_b,
                    const Tolerance &tol = {});

} // namespace qdt
