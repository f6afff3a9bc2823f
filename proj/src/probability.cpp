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

#include "qdt/probability.hpp"

#include <algorithm>
#include <cmath>

#include "qdt/error.hpp"

namespace qdt {

namespace {

constexpr double clamp_report_threshold = 1e-12;

void require_matching(const DensityOperator &rho, const EventOperator &e) {
    require(rho.dimension() == e.dimension(),
            "dimension mismatch between state and event");
}

void require_factorization(const DensityOperator &rho_ab, std::size_t da,
                           std::size_t db) {
    require(da * db == rho_ab.dimension(), "factorization mismatch");
}

double require_conditioning(double p, const Tolerance &tol) {
    if (!(p > tol.eps_equality)) {
        throw Error("conditioning on null event");
    }
    return p;
}

} // namespace

ClampedProbability clamp_probability(double raw) {
    ClampedProbability c;
    c.value = std::clamp(raw, 0.0, 1.0);
    if (std::abs(raw - c.value) > clamp_report_threshold) {
        c.raw = raw;
    }
    return c;
}

SequentialPair::SequentialPair(DensityOperator rho, EventOperator first_event,
                               EventOperator second_event,
                               const Tolerance &tol)
    : rho_(std::move(rho)), first_(std::move(first_event)),
      second_(std::move(second_event)) {
    require_matching(rho_, first_);
    require_matching(rho_, second_);
    for (const EventOperator *e : {&first_, &second_}) {
        require(e->is_projector_kind() &&
                    (e->matrix() * e->matrix() - e->matrix()).norm() <=
                        tol.eps_equality,
                "sequential events must be projectors");
    }
}

SequentialPair SequentialPair::reversed() const {
    return SequentialPair(rho_, second_, first_);
}

double event_probability(const DensityOperator &rho, const EventOperator &p) {
    require_matching(rho, p);
    return (rho.matrix() * p.matrix()).trace().real();
}

DensityOperator luders_state(const DensityOperator &rho,
                             const EventOperator &p_alpha,
                             const Tolerance &tol) {
    const double p = require_conditioning(event_probability(rho, p_alpha), tol);
    const ComplexMatrix &pa = p_alpha.matrix();
    return DensityOperator(rho.space(), pa * rho.matrix() * pa / p, tol);
}

double luders_probability(const SequentialPair &pair, const Tolerance &tol) {
    const double p = require_conditioning(
        event_probability(pair.rho(), pair.first_event()), tol);
    return wigner_probability(pair) / p;
}

double wigner_probability(const SequentialPair &pair) {
    const ComplexMatrix &pa = pair.first_event().matrix();
    const ComplexMatrix &pn = pair.second_event().matrix();
    return (pair.rho().matrix() * pa * pn * pa).trace().real();
}

Complex kirkwood_form(const DensityOperator &rho, const EventOperator &p_n,
                      const EventOperator &p_alpha) {
    require_matching(rho, p_n);
    require_matching(rho, p_alpha);
    return (rho.matrix() * p_n.matrix() * p_alpha.matrix()).trace();
}

double joint_probability(const DensityOperator &rho_ab,
                         const EventOperator &p_a, const EventOperator &p_b) {
    require_factorization(rho_ab, p_a.dimension(), p_b.dimension());
    return (rho_ab.matrix() * kron(p_a.matrix(), p_b.matrix()))
        .trace()
        .real();
}

double marginal_probability(const DensityOperator &rho_ab,
                            const EventOperator &event, Factor which) {
    const std::size_t d = event.dimension();
    require(rho_ab.dimension() % d == 0, "factorization mismatch");
    const ComplexMatrix one = identity(rho_ab.dimension() / d);
    const ComplexMatrix op = which == Factor::a ? kron(event.matrix(), one)
                                                : kron(one, event.matrix());
    return (rho_ab.matrix() * op).trace().real();
}

double conditional_probability(const DensityOperator &rho_ab,
                               const EventOperator &p_a,
                               const EventOperator &p_b, const Tolerance &tol) {
    const double joint = joint_probability(rho_ab, p_a, p_b);
    return joint / require_conditioning(
                       marginal_probability(rho_ab, p_b, Factor::b), tol);
}

double reverse_conditional_probability(const DensityOperator &rho_ab,
                                       const EventOperator &p_a,
                                       const EventOperator &p_b,
                                       const Tolerance &tol) {
    const double joint = joint_probability(rho_ab, p_a, p_b);
    return joint / require_conditioning(
                       marginal_probability(rho_ab, p_a, Factor::a), tol);
}

ProbabilityDecomposition prospect_probability(const DensityOperator &rho_ab,
                                              const Prospect &pi) {
    const std::size_t da = pi.outcome_space().dimension();
    const ComplexVector &b = pi.uncertain().amplitudes();
    const auto db = static_cast<Eigen::Index>(b.size());
    require_factorization(rho_ab, da, static_cast<std::size_t>(db));

    const ComplexMatrix &rho = rho_ab.matrix();
    const auto base = static_cast<Eigen::Index>(pi.outcome_index()) * db;
    double f = 0.0;
    Complex q = 0.0;
    for (Eigen::Index a = 0; a < db; ++a) {
        f += std::norm(b(a)) * rho(base + a, base + a).real();
        for (Eigen::Index c = 0; c < db; ++c) {
            if (c != a) {
                q += b(a) * std::conj(b(c)) * rho(base + c, base + a);
            }
        }
    }
    return {f + q.real(), f, q.real()};
}

UncertainConditional conditional_under_uncertainty(const DensityOperator &rho_ab,
                                                   const Prospect &pi,
                                                   const Tolerance &tol) {
    UncertainConditional out;
    out.numerator = prospect_probability(rho_ab, pi);

    const std::size_t da = pi.outcome_space().dimension();
    const ComplexVector &b = pi.uncertain().amplitudes();
    const std::size_t db = static_cast<std::size_t>(b.size());
    const std::size_t dims[] = {da, db};
    const std::size_t keep_b[] = {1};
    const ComplexMatrix rho_b = partial_trace(rho_ab.matrix(), dims, keep_b);

    double f = 0.0;
    for (Eigen::Index a = 0; a < b.size(); ++a) {
        f += std::norm(b(a)) * rho_b(a, a).real();
    }
    const double total = (rho_b * outer(b, b)).trace().real();
    out.denominator = {total, f, total - f};
    if (!(total > tol.eps_equality)) {
        throw Error("conditioning on null event");
    }
    out.value = out.numerator.total / total;
    return out;
}

} // namespace qdt
