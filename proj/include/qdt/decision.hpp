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
 * Decision layer: a lattice of prospects is scored by p = f + q, where the
 * utility factors f form a probability distribution and the attraction
 * factors q sum to zero. Attraction comes from the quarter-law prior
 * (mean |q| = 1/4), from a full quantum state, or is given explicitly, and
 * decays as exp(-mu / mu_c) with the amount of information mu.
 */

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdt/eventlogic.hpp"
#include "qdt/probability.hpp"
#include "qdt/qstate.hpp"

namespace qdt {

/// Mean |q| of the non-informative attraction prior.
inline constexpr double quarter_law = 0.25;

/// N >= 2 uniquely labeled prospects; `prospects` is empty for an abstract
/// lattice and otherwise holds one quantum prospect per label, all on the
/// same composite space.
class ProspectLattice {
  public:
    explicit ProspectLattice(std::vector<std::string> labels,
                             std::vector<Prospect> prospects = {});

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string> &labels() const noexcept {
        return labels_;
    }
    [[nodiscard]] const std::vector<Prospect> &prospects() const noexcept {
        return prospects_;
    }
    [[nodiscard]] bool is_quantum() const noexcept {
        return !prospects_.empty();
    }

  private:
    std::vector<std::string> labels_;
    std::vector<Prospect> prospects_;
};

enum class UtilityMode { direct_factors, nonnegative_utilities };

struct UtilitySpec {
    UtilityMode mode = UtilityMode::direct_factors;
    std::vector<double> values;
};

/// Direct factors are checked (each in [0, 1], sum 1) and returned as-is;
/// nonnegative utilities are normalized by their sum.
[[nodiscard]] std::vector<double> utility_factors(const UtilitySpec &spec,
                                                  const Tolerance &tol = {});

enum class AttractionMode { quarter_law_prior, from_quantum_state, explicit_values };

struct AttractionSpec {
    AttractionMode mode = AttractionMode::quarter_law_prior;
    std::vector<int> signs;         ///< +1 / -1 per prospect
    std::vector<double> magnitudes; ///< explicit mode
    double mu = 0.0;                ///< information measure
    double mu_c = 1.0;              ///< critical information
    std::optional<DensityOperator> state; ///< from_quantum_state mode
};

/**
 * Quarter-law prior: the positive group shares +N/8 and the negative group
 * -N/8, uniformly within each group, so that sum q = 0 and mean |q| = 1/4.
 * Throws "alternation law unsatisfiable" when only one sign is present.
 */
[[nodiscard]] std::vector<double> attraction_prior(std::size_t n_prospects,
                                                   std::span<const int> signs);

/// Per-prospect probabilities of a quantum lattice, raw and normalized.
struct LatticeEvaluation {
    std::vector<ProbabilityDecomposition> raw;
    /// sum_n tr(rho P(pi_n)) before normalization.
    double raw_total = 0.0;
    /// p_n / sum p and f_n / sum f, with q_n = p_n - f_n.
    std::vector<ProbabilityDecomposition> normalized;
    double alternation_defect = 0.0; ///< |sum_n q_n| after normalization
    double unity_defect = 0.0;       ///< ||sum_n P(pi_n) - 1||_F

    [[nodiscard]] std::vector<double> attraction() const;
};

[[nodiscard]] LatticeEvaluation evaluate_lattice(const DensityOperator &rho_ab,
                                                 const ProspectLattice &lattice,
                                                 const Tolerance &tol = {});

/// Normalized attraction factors of every lattice member.
[[nodiscard]] std::vector<double>
attraction_from_state(const DensityOperator &rho_ab,
                      const ProspectLattice &lattice,
                      const Tolerance &tol = {});

/// q * exp(-mu / mu_c), elementwise.
[[nodiscard]] std::vector<double> decay_attraction(std::span<const double> q,
                                                   double mu, double mu_c);

struct PredictionRow {
    std::string label;
    double utility = 0.0;    ///< f
    double attraction = 0.0; ///< q after decay
    double probability = 0.0;
    // 1 = highest; ties go to the lower index.
    std::size_t rank_by_probability = 0;
    std::size_t rank_by_utility = 0;
    std::size_t rank_by_attraction = 0;
};

struct PredictionReport {
    std::vector<PredictionRow> rows;
    double mu = 0.0;
    double mu_c = 1.0;
    double decay_factor = 1.0;
    double normalization_defect = 0.0; ///< |sum p - 1|
    double alternation_defect = 0.0;   ///< |sum q|
    std::optional<double> unity_defect;     ///< quantum attraction only
    std::optional<double> raw_lattice_total; ///< quantum attraction only
};

/// p_n = f_n + q_n exp(-mu / mu_c). Throws "prior incompatible with
/// utilities" when some p_n leaves [0, 1].
[[nodiscard]] PredictionReport predict(const ProspectLattice &lattice,
                                       const UtilitySpec &utility,
                                       const AttractionSpec &attraction,
                                       const Tolerance &tol = {});

enum class Order { more, equal, less };

/// How prospect i compares with prospect j under each factor.
struct PairClassification {
    Order useful = Order::equal;     ///< by f
    Order attractive = Order::equal; ///< by q
    Order preferable = Order::equal; ///< by p
};

[[nodiscard]] PairClassification classify_pair(const PredictionReport &report,
                                               std::size_t i, std::size_t j);

struct EmpiricalComparison {
    std::vector<double> deviations; ///< p_n - target_n
    double max_deviation = 0.0;
};

[[nodiscard]] EmpiricalComparison
compare_to_empirical(const PredictionReport &report,
                     std::span<const double> targets);

/**
 * Information level mu* at which two prospects swap preference:
 * mu_c * ln((q1 - q2) / (f2 - f1)), when that is positive. Empty when the
 * preference at mu = 0 already matches the utility ordering.
 */
[[nodiscard]] std::optional<double>
preference_reversal_threshold(std::array<double, 2> f, std::array<double, 2> q,
                              double mu_c);

struct Scenario {
    std::string name;
    ProspectLattice lattice;
    UtilitySpec utility;
    AttractionSpec attraction;
    std::vector<double> empirical;
};

/// Cooperate / defect under uncertainty about the partner's move.
[[nodiscard]] Scenario prisoner_dilemma_scenario();

} // namespace qdt
