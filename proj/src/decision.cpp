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

#include "qdt/decision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qdt/error.hpp"

namespace qdt {

namespace {

double sum_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

// rank[i] = 1 + number of entries that beat entry i (greater value, or
// equal value at a lower index).
std::vector<std::size_t> ranks_of(const std::vector<double> &v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    std::vector<std::size_t> rank(v.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        rank[order[k]] = k + 1;
    }
    return rank;
}

Order compare(double a, double b) {
    if (a > b) {
        return Order::more;
    }
    return a < b ? Order::less : Order::equal;
}

std::vector<double> explicit_attraction(const AttractionSpec &spec,
                                        std::size_t n) {
    require(spec.magnitudes.size() == n,
            "explicit attraction needs one value per prospect");
    std::vector<double> q = spec.magnitudes;
    if (!spec.signs.empty()) {
        require(spec.signs.size() == n,
                "attraction signs need one entry per prospect");
        for (std::size_t k = 0; k < n; ++k) {
            require(spec.signs[k] == 1 || spec.signs[k] == -1,
                    "attraction signs must be +1 or -1");
            require(q[k] >= 0.0,
                    "magnitudes must be nonnegative when signs are given");
            q[k] *= spec.signs[k];
        }
    }
    return q;
}

} // namespace

ProspectLattice::ProspectLattice(std::vector<std::string> labels,
                                 std::vector<Prospect> prospects)
    : labels_(std::move(labels)), prospects_(std::move(prospects)) {
    require(labels_.size() >= 2, "a prospect lattice needs at least two prospects");
    const std::set<std::string> unique(labels_.begin(), labels_.end());
    require(unique.size() == labels_.size(), "prospect labels must be unique");
    require(prospects_.empty() || prospects_.size() == labels_.size(),
            "one quantum prospect per label");
    for (const Prospect &p : prospects_) {
        require(p.composite_space().dimension() ==
                    prospects_.front().composite_space().dimension(),
                "lattice prospects act on different spaces");
    }
}

std::vector<double> utility_factors(const UtilitySpec &spec,
                                    const Tolerance &tol) {
    require(!spec.values.empty(), "utility values are empty");
    for (double v : spec.values) {
        require(std::isfinite(v), "utility values must be finite");
    }
    if (spec.mode == UtilityMode::direct_factors) {
        for (double v : spec.values) {
            require(v >= 0.0 && v <= 1.0, "utility factors must lie in [0, 1]");
        }
        require(std::abs(sum_of(spec.values) - 1.0) <= tol.eps_equality,
                "utility factors must sum to 1");
        return spec.values;
    }
    for (double v : spec.values) {
        require(v >= 0.0, "utilities must be nonnegative");
    }
    const double total = sum_of(spec.values);
    require(total > 0.0, "utilities are all zero");
    std::vector<double> f;
    f.reserve(spec.values.size());
    for (double v : spec.values) {
        f.push_back(v / total);
    }
    return f;
}

std::vector<double> attraction_prior(std::size_t n_prospects,
                                     std::span<const int> signs) {
    require(n_prospects >= 2, "a prospect lattice needs at least two prospects");
    require(signs.size() == n_prospects,
            "attraction signs need one entry per prospect");
    std::size_t positive = 0;
    std::size_t negative = 0;
    for (int s : signs) {
        require(s == 1 || s == -1, "attraction signs must be +1 or -1");
        (s > 0 ? positive : negative) += 1;
    }
    require(positive > 0 && negative > 0, "alternation law unsatisfiable");
    // Each group carries total |q| of N/8: together mean |q| = 1/4, and
    // the two totals cancel.
    const double group_total = quarter_law * static_cast<double>(n_prospects) / 2.0;
    std::vector<double> q;
    q.reserve(n_prospects);
    for (int s : signs) {
        q.push_back(s > 0 ? group_total / static_cast<double>(positive)
                          : -group_total / static_cast<double>(negative));
    }
    return q;
}

std::vector<double> LatticeEvaluation::attraction() const {
    std::vector<double> q;
    q.reserve(normalized.size());
    for (const auto &d : normalized) {
        q.push_back(d.attraction_factor);
    }
    return q;
}

LatticeEvaluation evaluate_lattice(const DensityOperator &rho_ab,
                                   const ProspectLattice &lattice,
                                   const Tolerance &tol) {
    require(lattice.is_quantum(), "lattice carries no quantum prospects");
    LatticeEvaluation out;
    double utility_total = 0.0;
    std::vector<EventOperator> operators;
    for (const Prospect &pi : lattice.prospects()) {
        out.raw.push_back(prospect_probability(rho_ab, pi));
        out.raw_total += out.raw.back().total;
        utility_total += out.raw.back().utility_factor;
        operators.push_back(prospect_operator(pi, tol));
    }
    if (!(out.raw_total > tol.eps_equality) ||
        !(utility_total > tol.eps_equality)) {
        throw Error("lattice has zero probability in this state");
    }
    double attraction_total = 0.0;
    for (const auto &d : out.raw) {
        const double p = d.total / out.raw_total;
        const double f = d.utility_factor / utility_total;
        out.normalized.push_back({p, f, p - f});
        attraction_total += p - f;
    }
    out.alternation_defect = std::abs(attraction_total);
    out.unity_defect = resolution_of_unity_check(operators, tol).defect;
    return out;
}

std::vector<double> attraction_from_state(const DensityOperator &rho_ab,
                                          const ProspectLattice &lattice,
                                          const Tolerance &tol) {
    return evaluate_lattice(rho_ab, lattice, tol).attraction();
}

std::vector<double> decay_attraction(std::span<const double> q, double mu,
                                     double mu_c) {
    require(std::isfinite(mu) && mu >= 0.0,
            "information measure must be nonnegative");
    require(std::isfinite(mu_c) && mu_c > 0.0,
            "critical information must be positive");
    const double factor = std::exp(-mu / mu_c);
    std::vector<double> out(q.begin(), q.end());
    for (double &v : out) {
        v *= factor;
    }
    return out;
}

PredictionReport predict(const ProspectLattice &lattice,
                         const UtilitySpec &utility,
                         const AttractionSpec &attraction,
                         const Tolerance &tol) {
    const std::size_t n = lattice.size();
    const std::vector<double> f = utility_factors(utility, tol);
    require(f.size() == n, "utility values need one entry per prospect");

    PredictionReport report;
    report.mu = attraction.mu;
    report.mu_c = attraction.mu_c;

    std::vector<double> q0;
    switch (attraction.mode) {
    case AttractionMode::quarter_law_prior:
        q0 = attraction_prior(n, attraction.signs);
        break;
    case AttractionMode::from_quantum_state: {
        require(attraction.state.has_value(),
                "quantum attraction needs a density operator");
        const LatticeEvaluation eval =
            evaluate_lattice(*attraction.state, lattice, tol);
        q0 = eval.attraction();
        report.unity_defect = eval.unity_defect;
        report.raw_lattice_total = eval.raw_total;
        break;
    }
    case AttractionMode::explicit_values:
        q0 = explicit_attraction(attraction, n);
        break;
    }
    for (double v : q0) {
        require(std::abs(v) <= 1.0, "attraction factors must lie in [-1, 1]");
    }
    require(std::abs(sum_of(q0)) <= tol.eps_equality,
            "attraction factors violate the alternation law");

    const std::vector<double> q =
        decay_attraction(q0, attraction.mu, attraction.mu_c);
    report.decay_factor = std::exp(-attraction.mu / attraction.mu_c);

    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) {
        p[k] = f[k] + q[k];
        require(p[k] >= -tol.eps_equality && p[k] <= 1.0 + tol.eps_equality,
                "prior incompatible with utilities");
    }
    const auto rank_p = ranks_of(p);
    const auto rank_f = ranks_of(f);
    const auto rank_q = ranks_of(q);
    for (std::size_t k = 0; k < n; ++k) {
        report.rows.push_back({lattice.labels()[k], f[k], q[k], p[k],
                               rank_p[k], rank_f[k], rank_q[k]});
    }
    report.normalization_defect = std::abs(sum_of(p) - 1.0);
    report.alternation_defect = std::abs(sum_of(q));
    return report;
}

PairClassification classify_pair(const PredictionReport &report, std::size_t i,
                                 std::size_t j) {
    require(i < report.rows.size() && j < report.rows.size(),
            "prospect index out of range");
    const PredictionRow &a = report.rows[i];
    const PredictionRow &b = report.rows[j];
    return {compare(a.utility, b.utility), compare(a.attraction, b.attraction),
            compare(a.probability, b.probability)};
}

EmpiricalComparison compare_to_empirical(const PredictionReport &report,
                                         std::span<const double> targets) {
    require(targets.size() == report.rows.size(),
            "empirical targets need one entry per prospect");
    EmpiricalComparison c;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const double d = report.rows[k].probability - targets[k];
        c.deviations.push_back(d);
        c.max_deviation = std::max(c.max_deviation, std::abs(d));
    }
    return c;
}

std::optional<double> preference_reversal_threshold(std::array<double, 2> f,
                                                    std::array<double, 2> q,
                                                    double mu_c) {
    require(std::isfinite(mu_c) && mu_c > 0.0,
            "critical information must be positive");
    if (q[0] == q[1]) {
        throw Error("degenerate attraction");
    }
    const double utility_gap = f[1] - f[0];
    if (utility_gap == 0.0) {
        return std::nullopt;
    }
    const double ratio = (q[0] - q[1]) / utility_gap;
    if (!(ratio > 1.0)) {
        return std::nullopt;
    }
    return mu_c * std::log(ratio);
}

Scenario prisoner_dilemma_scenario() {
    AttractionSpec attraction;
    attraction.mode = AttractionMode::quarter_law_prior;
    attraction.signs = {-1, +1};
    return Scenario{"prisoner-dilemma",
                    ProspectLattice({"cooperate", "defect"}),
                    UtilitySpec{UtilityMode::direct_factors, {0.60, 0.40}},
                    attraction,
                    {0.37, 0.63}};
}

} // namespace qdt
