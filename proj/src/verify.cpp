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

#include "qdt/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "qdt/channels.hpp"
#include "qdt/decision.hpp"
#include "qdt/error.hpp"
#include "qdt/eventlogic.hpp"
#include "qdt/probability.hpp"
#include "qdt/qstate.hpp"
#include "qdt/random.hpp"

namespace qdt {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Measurement {
    double value = 0.0;
    std::size_t samples = 0;
};

using CheckFn = std::function<Measurement(Rng &, const Tolerance &)>;

struct CheckDef {
    const char *module;
    const char *name;
    double threshold;
    bool witness;
    CheckFn run;
};

std::size_t uniform_index(Rng &rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> spectrum(const ComplexMatrix &m) {
    return eig_hermitian(hermitian_part(m)).values;
}

double spectrum_gap(const ComplexMatrix &a, const ComplexMatrix &b) {
    const auto sa = spectrum(a);
    const auto sb = spectrum(b);
    double gap = 0.0;
    for (std::size_t k = 0; k < sa.size(); ++k) {
        gap = std::max(gap, std::abs(sa[k] - sb[k]));
    }
    return gap;
}

ComplexMatrix integer_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> entry(-5, 5);
    ComplexMatrix m(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) = Complex(entry(rng), entry(rng));
        }
    }
    return m;
}

EventOperator random_projector(Rng &rng, std::size_t dim, std::size_t rank,
                               const Tolerance &tol) {
    return projector_onto(HilbertSpace(dim), random_ginibre(dim, rank, rng),
                          tol);
}

/// Projectors spanned by subsets of one shared random basis, mixed with
/// generic ones, so that meets are not always trivial.
EventOperator lattice_projector(Rng &rng, const ComplexMatrix &basis,
                                const Tolerance &tol) {
    const auto dim = static_cast<std::size_t>(basis.rows());
    if (uniform_index(rng, 0, 1) == 0) {
        return random_projector(rng, dim, uniform_index(rng, 1, dim - 1), tol);
    }
    std::vector<Eigen::Index> cols;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        if (uniform_index(rng, 0, 1) == 1) {
            cols.push_back(c);
        }
    }
    if (cols.empty()) {
        cols.push_back(0);
    }
    ComplexMatrix v(basis.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        v.col(static_cast<Eigen::Index>(k)) = basis.col(cols[k]);
    }
    return projector_onto(HilbertSpace(dim), v, tol);
}

Prospect random_prospect(Rng &rng, std::size_t da, std::size_t db,
                         std::size_t outcome) {
    return Prospect(HilbertSpace(da), outcome,
                    InconclusiveEvent(HilbertSpace(db),
                                      random_state(db, rng).amplitudes()));
}

ProspectLattice random_lattice(Rng &rng, std::size_t da, std::size_t db) {
    std::vector<std::string> labels;
    std::vector<Prospect> prospects;
    for (std::size_t n = 0; n < da; ++n) {
        labels.push_back("pi" + std::to_string(n + 1));
        prospects.push_back(random_prospect(rng, da, db, n));
    }
    return ProspectLattice(std::move(labels), std::move(prospects));
}

std::vector<double> random_utilities(Rng &rng, std::size_t n) {
    std::vector<double> f(n);
    for (double &v : f) {
        v = uniform_real(rng, 0.05, 1.0);
    }
    const double total = std::accumulate(f.begin(), f.end(), 0.0);
    for (double &v : f) {
        v /= total;
    }
    return f;
}

std::vector<int> random_signs(Rng &rng, std::size_t n) {
    std::vector<int> signs(n);
    for (int &s : signs) {
        s = uniform_index(rng, 0, 1) == 0 ? -1 : 1;
    }
    signs[uniform_index(rng, 0, n - 1)] *= -1;
    if (std::all_of(signs.begin(), signs.end(),
                    [&](int s) { return s == signs[0]; })) {
        signs[0] = -signs[0];
    }
    return signs;
}

std::array<std::size_t, 3> pipeline_dims() { return {2, 2, 2}; }

struct PipelineSample {
    MeasurementPipeline pipeline;
    Trajectory trajectory;
};

PipelineSample random_pipeline(Rng &rng, const Tolerance &tol) {
    const auto dims = pipeline_dims();
    const std::size_t total = dims[0] * dims[1] * dims[2];
    MeasurementPipeline p = MeasurementPipeline::standard(
        dims, random_unitary(total, rng).matrix(),
        random_unitary(total, rng).matrix(), random_unitary(total, rng).matrix(),
        {1.0, 2.0, 3.0, 4.0, 5.0}, tol);
    const std::array<DensityOperator, 3> initial{random_density(dims[0], rng),
                                                 random_density(dims[1], rng),
                                                 random_density(dims[2], rng)};
    Trajectory t = run_pipeline(p, initial, tol);
    return {std::move(p), std::move(t)};
}

// numkernel ------------------------------------------------------------------

Measurement kron_associative(Rng &rng, const Tolerance &) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const auto a = integer_matrix(rng, uniform_index(rng, 1, 3),
                                      uniform_index(rng, 1, 3));
        const auto b = integer_matrix(rng, uniform_index(rng, 1, 3),
                                      uniform_index(rng, 1, 3));
        const auto c = integer_matrix(rng, uniform_index(rng, 1, 3),
                                      uniform_index(rng, 1, 3));
        const ComplexMatrix d = kron(kron(a, b), c) - kron(a, kron(b, c));
        m.value = std::max(m.value, d.cwiseAbs().maxCoeff());
    }
    return m;
}

Measurement partial_trace_preserves_trace(Rng &rng, const Tolerance &) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        std::vector<std::size_t> dims(uniform_index(rng, 2, 3));
        for (auto &d : dims) {
            d = uniform_index(rng, 1, 3);
        }
        const ComplexMatrix h = random_hermitian(dimension_product(dims), rng);
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (uniform_index(rng, 0, 1) == 1) {
                keep.push_back(k);
            }
        }
        m.value = std::max(m.value,
                           std::abs(trace(partial_trace(h, dims, keep)) - trace(h)));
    }
    return m;
}

Measurement eig_reconstruction(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const ComplexMatrix h = random_hermitian(uniform_index(rng, 1, 8), rng);
        const EigenSystem e = eig_hermitian(h, tol);
        ComplexMatrix lambda = ComplexMatrix::Zero(h.rows(), h.cols());
        for (std::size_t k = 0; k < e.values.size(); ++k) {
            lambda(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
                e.values[k];
        }
        const ComplexMatrix r = h - e.vectors * lambda * dagger(e.vectors);
        m.value = std::max(m.value, frobenius_norm(r) /
                                        std::max(1.0, frobenius_norm(h)));
    }
    return m;
}

Measurement partial_trace_factorizes(Rng &rng, const Tolerance &) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::array<std::size_t, 2> dims{uniform_index(rng, 1, 4),
                                              uniform_index(rng, 1, 4)};
        const ComplexMatrix a = random_hermitian(dims[0], rng);
        const ComplexMatrix b = random_hermitian(dims[1], rng);
        const ComplexMatrix ab = kron(a, b);
        const std::array<std::size_t, 1> keep_a{0};
        const std::array<std::size_t, 1> keep_b{1};
        const ComplexMatrix da = partial_trace(ab, dims, keep_a) - trace(b) * a;
        const ComplexMatrix db = partial_trace(ab, dims, keep_b) - trace(a) * b;
        m.value = std::max({m.value, frobenius_norm(da), frobenius_norm(db)});
    }
    return m;
}

// qstate ---------------------------------------------------------------------

Measurement pure_density_idempotent(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const DensityOperator p =
            pure_density(random_state(uniform_index(rng, 1, 6), rng), tol);
        m.value = std::max(m.value,
                           frobenius_norm(p.matrix() * p.matrix() - p.matrix()));
    }
    return m;
}

Measurement evolve_preserves(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t d = uniform_index(rng, 1, 6);
        const DensityOperator rho = random_density(d, rng);
        const DensityOperator out = evolve(rho, random_unitary(d, rng), tol);
        m.value = std::max({m.value, std::abs(trace(out.matrix()) - 1.0),
                            hermiticity_defect(out.matrix())});
    }
    return m;
}

Measurement dephase_idempotent(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t d = uniform_index(rng, 1, 6);
        const DensityOperator rho = random_density(d, rng);
        const ComplexMatrix basis = random_unitary(d, rng).matrix();
        const DensityOperator once = dephase(rho, basis, tol);
        const DensityOperator twice = dephase(once, basis, tol);
        m.value = std::max(m.value, frobenius_norm(twice.matrix() - once.matrix()));
    }
    return m;
}

// The dephased state is a valid density operator whose diagonal in the
// dephasing basis equals the input's, so no basis weight is lost.
Measurement dephase_keeps_diagonal(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t d = uniform_index(rng, 1, 6);
        const DensityOperator rho = random_density(d, rng);
        const ComplexMatrix basis = random_unitary(d, rng).matrix();
        const DensityOperator out = dephase(rho, basis, tol);
        if (!validate_density(out.matrix(), tol).passed()) {
            return {inf, s + 1};
        }
        const ComplexMatrix before = dagger(basis) * rho.matrix() * basis;
        const ComplexMatrix after = dagger(basis) * out.matrix() * basis;
        m.value = std::max(
            m.value, (before.diagonal() - after.diagonal()).cwiseAbs().maxCoeff());
    }
    return m;
}

// eventlogic -----------------------------------------------------------------

template <class Law> Measurement lattice_law(Rng &rng, const Tolerance &tol, Law law) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t d = uniform_index(rng, 2, 4);
        const ComplexMatrix basis = random_unitary(d, rng).matrix();
        const EventOperator a = lattice_projector(rng, basis, tol);
        const EventOperator b = lattice_projector(rng, basis, tol);
        const EventOperator c = lattice_projector(rng, basis, tol);
        m.value = std::max(m.value, law(a, b, c));
    }
    return m;
}

double distance(const EventOperator &a, const EventOperator &b) {
    return frobenius_norm(a.matrix() - b.matrix());
}

Measurement join_commutative(Rng &rng, const Tolerance &tol) {
    return lattice_law(rng, tol, [&](const auto &a, const auto &b, const auto &) {
        return distance(join(a, b, tol), join(b, a, tol));
    });
}

Measurement join_associative(Rng &rng, const Tolerance &tol) {
    return lattice_law(rng, tol, [&](const auto &a, const auto &b, const auto &c) {
        return distance(join(join(a, b, tol), c, tol),
                        join(a, join(b, c, tol), tol));
    });
}

Measurement meet_associative(Rng &rng, const Tolerance &tol) {
    return lattice_law(rng, tol, [&](const auto &a, const auto &b, const auto &c) {
        return distance(meet(meet(a, b, tol), c, tol),
                        meet(a, meet(b, c, tol), tol));
    });
}

Measurement lattice_idempotent(Rng &rng, const Tolerance &tol) {
    return lattice_law(rng, tol, [&](const auto &a, const auto &, const auto &) {
        return std::max(distance(join(a, a, tol), a), distance(meet(a, a, tol), a));
    });
}

Measurement spin_non_distributivity(Rng &, const Tolerance &tol) {
    const HilbertSpace spin(2);
    ComplexMatrix x_plus(2, 1);
    x_plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const EventOperator a = projector_onto(spin, x_plus, tol);
    const EventOperator b1 = projector(spin, {0});
    const EventOperator b2 = projector(spin, {1});
    const EventOperator lhs = meet(a, join(b1, b2, tol), tol);
    const EventOperator rhs = join(meet(a, b1, tol), meet(a, b2, tol), tol);
    return {std::max(distance(lhs, a), frobenius_norm(rhs.matrix())), 1};
}

Measurement inconclusive_not_union(Rng &rng, const Tolerance &tol) {
    Measurement m{inf, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t d = uniform_index(rng, 2, 5);
        const InconclusiveEvent b(HilbertSpace(d), random_state(d, rng).amplitudes(),
                                  tol);
        std::vector<std::size_t> support;
        for (std::size_t k = 0; k < d; ++k) {
            if (b.amplitudes()(static_cast<Eigen::Index>(k)) != Complex(0.0)) {
                support.push_back(k);
            }
        }
        const EventOperator u = projector(HilbertSpace(d), support, EventKind::union_of);
        m.value = std::min(m.value,
                           frobenius_norm(inconclusive_operator(b, tol).matrix() -
                                          u.matrix()));
    }
    return m;
}

Measurement prospect_scaling(Rng &rng, const Tolerance &) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t da = uniform_index(rng, 1, 4);
        const std::size_t db = uniform_index(rng, 1, 4);
        ComplexVector b = random_state(db, rng).amplitudes();
        if (s % 2 == 1) {
            b *= uniform_real(rng, 0.2, 3.0);
        }
        const ComplexMatrix p = prospect_matrix(da, uniform_index(rng, 0, da - 1), b);
        const double norm2 = b.squaredNorm();
        m.value = std::max(m.value, frobenius_norm(p * p - norm2 * p) /
                                        std::max(1.0, norm2 * norm2));
    }
    return m;
}

// Observable diag(1, 1, 2) in a random frame, a random state and a seeded
// symmetry breaker: limits are nonnegative and each degenerate group's
// limits add up to its unperturbed probability.
Measurement lift_sums(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 20};
    const std::array<double, 3> levels{1.0, 1.0, 2.0};
    const auto nu = default_nu_sequence();
    for (std::size_t s = 0; s < m.samples; ++s) {
        const ComplexMatrix u = random_unitary(3, rng).matrix();
        const ComplexMatrix obs = hermitian_part(u * diagonal(levels) * dagger(u));
        const ComplexMatrix gamma = default_symmetry_breaker(3, rng());
        const LiftResult r =
            lift_degeneracy(obs, gamma, nu, random_density(3, rng), tol);
        for (const auto &sub : r.subevents) {
            m.value = std::max(m.value, -sub.limit);
        }
        for (const auto &g : r.groups) {
            m.value = std::max(m.value, std::abs(g.limit_sum - g.probability));
        }
    }
    return m;
}

// probability ----------------------------------------------------------------

struct RankOneDraw {
    DensityOperator rho;
    EventOperator a;
    EventOperator b;
};

RankOneDraw rank_one_draw(Rng &rng, const Tolerance &tol) {
    const std::size_t d = uniform_index(rng, 2, 5);
    return {random_density(d, rng), random_projector(rng, d, 1, tol),
            random_projector(rng, d, 1, tol)};
}

Measurement luders_symmetry(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const RankOneDraw d = rank_one_draw(rng, tol);
        const SequentialPair pair(d.rho, d.b, d.a, tol);
        m.value = std::max(m.value, std::abs(luders_probability(pair, tol) -
                                             luders_probability(pair.reversed(), tol)));
    }
    return m;
}

Measurement luders_degenerate_asymmetry(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 10};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const SequentialPair pair(random_density(3, rng),
                                  random_projector(rng, 3, 2, tol),
                                  random_projector(rng, 3, 1, tol), tol);
        m.value = std::max(m.value, std::abs(luders_probability(pair, tol) -
                                             luders_probability(pair.reversed(), tol)));
    }
    return m;
}

Measurement luders_commuting_exact(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t d = uniform_index(rng, 2, 5);
        const HilbertSpace space(d);
        const DensityOperator rho = random_density(d, rng);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const SequentialPair pair(rho, projector(space, {j}),
                                          projector(space, {i}), tol);
                const double delta = i == j ? 1.0 : 0.0;
                m.value = std::max(m.value,
                                   std::abs(luders_probability(pair, tol) - delta));
            }
        }
    }
    return m;
}

Measurement luders_commuting_rotated(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t d = uniform_index(rng, 2, 5);
        const HilbertSpace space(d);
        const DensityOperator rho = random_density(d, rng);
        const ComplexMatrix basis = random_unitary(d, rng).matrix();
        const std::size_t i = uniform_index(rng, 0, d - 1);
        const std::size_t j = uniform_index(rng, 0, d - 1);
        const SequentialPair pair(
            rho, projector_onto(space, basis.col(static_cast<Eigen::Index>(j)), tol),
            projector_onto(space, basis.col(static_cast<Eigen::Index>(i)), tol), tol);
        m.value = std::max(m.value, std::abs(luders_probability(pair, tol) -
                                             (i == j ? 1.0 : 0.0)));
    }
    return m;
}

Measurement wigner_relation(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const RankOneDraw d = rank_one_draw(rng, tol);
        const SequentialPair pair(d.rho, d.b, d.a, tol);
        const double pl = luders_probability(pair, tol);
        const double pb = event_probability(d.rho, d.b);
        m.value = std::max(m.value, std::abs(wigner_probability(pair) - pl * pb));
    }
    return m;
}

Measurement decomposition_exact(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t da = uniform_index(rng, 2, 4);
        const std::size_t db = uniform_index(rng, 2, 4);
        const DensityOperator rho = random_density(da * db, rng);
        const Prospect pi = random_prospect(rng, da, db, uniform_index(rng, 0, da - 1));
        const ProbabilityDecomposition d = prospect_probability(rho, pi);
        const double p = event_probability(rho, prospect_operator(pi, tol));
        const double scale = std::max({std::abs(p), std::abs(d.utility_factor),
                                       std::abs(d.attraction_factor),
                                       std::numeric_limits<double>::min()});
        m.value = std::max(
            {m.value,
             std::abs(p - (d.utility_factor + d.attraction_factor)) / scale,
             std::abs(d.total - (d.utility_factor + d.attraction_factor)) / scale});
    }
    return m;
}

Measurement separable_prospect_no_attraction(Rng &rng, const Tolerance &) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t da = uniform_index(rng, 2, 4);
        const std::size_t db = uniform_index(rng, 2, 4);
        ComplexVector b = ComplexVector::Zero(static_cast<Eigen::Index>(db));
        b(static_cast<Eigen::Index>(uniform_index(rng, 0, db - 1))) =
            std::polar(1.0, uniform_real(rng, 0.0, 6.283185307179586));
        const Prospect pi(HilbertSpace(da), uniform_index(rng, 0, da - 1),
                          InconclusiveEvent(HilbertSpace(db), b));
        const double q =
            prospect_probability(random_density(da * db, rng), pi).attraction_factor;
        m.value = std::max(m.value, std::abs(q));
    }
    return m;
}

Measurement diagonal_state_no_attraction(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t da = uniform_index(rng, 2, 4);
        const std::size_t db = uniform_index(rng, 2, 4);
        std::vector<double> weights = random_utilities(rng, da * db);
        const DensityOperator rho(HilbertSpace(da * db), diagonal(weights), tol);
        const Prospect pi = random_prospect(rng, da, db, uniform_index(rng, 0, da - 1));
        m.value = std::max(m.value,
                           std::abs(prospect_probability(rho, pi).attraction_factor));
    }
    return m;
}

Measurement probability_bounds(Rng &rng, const Tolerance &) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t da = uniform_index(rng, 2, 4);
        const std::size_t db = uniform_index(rng, 2, 4);
        const DensityOperator rho = random_density(da * db, rng);
        const Prospect pi = random_prospect(rng, da, db, uniform_index(rng, 0, da - 1));
        const ProbabilityDecomposition d = prospect_probability(rho, pi);
        m.value = std::max({m.value, -d.total, d.total - 1.0,
                            std::abs(d.attraction_factor) - 1.0});
    }
    return m;
}

// channels -------------------------------------------------------------------

Measurement channel_outputs_valid(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 50};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const PipelineSample p = random_pipeline(rng, tol);
        for (const auto &step : p.trajectory.steps) {
            const DensityReport r = validate_density(step.matrix(), tol);
            if (!r.passed()) {
                return {inf, s + 1};
            }
            m.value = std::max(m.value, std::abs(trace(step.matrix()) - 1.0));
        }
    }
    return m;
}

Measurement pipeline_product_cuts(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 50};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const PipelineSample p = random_pipeline(rng, tol);
        const PipelineAudit audit = audit_pipeline(p.pipeline, p.trajectory, tol);
        m.value = std::max({m.value, audit.post_b_product_defect,
                            audit.post_a_product_defect});
    }
    return m;
}

Measurement choi_positive(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 50};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const PipelineSample p = random_pipeline(rng, tol);
        const PipelineAudit audit = audit_pipeline(p.pipeline, p.trajectory, tol);
        for (double e : audit.choi_min_eigenvalues) {
            m.value = std::max(m.value, -e);
        }
    }
    return m;
}

Measurement measurement_idempotent(Rng &rng, const Tolerance &tol) {
    const auto dims = pipeline_dims();
    Measurement m{0.0, 50};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const Channel c = Channel::measurement(
            uniform_index(rng, 0, 1) == 0 ? std::vector<std::size_t>{1}
                                          : std::vector<std::size_t>{0});
        const DensityOperator rho = random_density(8, rng);
        const DensityOperator once = apply_channel(rho, c, dims, tol);
        const DensityOperator twice = apply_channel(once, c, dims, tol);
        m.value = std::max(m.value, frobenius_norm(twice.matrix() - once.matrix()));
    }
    return m;
}

Measurement evolution_preserves_spectrum(Rng &rng, const Tolerance &tol) {
    const auto dims = pipeline_dims();
    Measurement m{0.0, 50};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const Channel c = Channel::evolution(random_unitary(8, rng).matrix(),
                                             "evolution", tol);
        const DensityOperator rho = random_density(8, rng);
        m.value = std::max(
            m.value, spectrum_gap(rho.matrix(), apply_channel(rho, c, dims, tol).matrix()));
    }
    return m;
}

// |000> and (|000> + |110>)/sqrt(2) share trace and spectrum; the B
// measurement keeps the first pure and mixes the second.
std::array<DensityOperator, 2> measurement_witness_inputs(const Tolerance &tol) {
    const HilbertSpace space(8);
    ComplexVector product = ComplexVector::Zero(8);
    product(0) = 1.0;
    ComplexVector entangled = ComplexVector::Zero(8);
    entangled(0) = entangled(6) = 1.0 / std::sqrt(2.0);
    return {pure_density(StateVector(space, product, tol), tol),
            pure_density(StateVector(space, entangled, tol), tol)};
}

Measurement measurement_changes_spectrum(Rng &, const Tolerance &tol) {
    const auto dims = pipeline_dims();
    const auto inputs = measurement_witness_inputs(tol);
    const DensityOperator out =
        apply_channel(inputs[1], Channel::measurement({1}), dims, tol);
    return {spectrum_gap(inputs[1].matrix(), out.matrix()), 1};
}

Measurement measurement_nonunitary(Rng &, const Tolerance &tol) {
    const auto dims = pipeline_dims();
    const auto inputs = measurement_witness_inputs(tol);
    const Channel c = Channel::measurement({1});
    if (spectrum_gap(inputs[0].matrix(), inputs[1].matrix()) > tol.eps_equality) {
        return {0.0, 1};
    }
    return {spectrum_gap(apply_channel(inputs[0], c, dims, tol).matrix(),
                         apply_channel(inputs[1], c, dims, tol).matrix()),
            1};
}

Measurement pipeline_static_consistency(Rng &rng, const Tolerance &tol) {
    const auto dims = pipeline_dims();
    Measurement m{0.0, 20};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const PipelineSample p = random_pipeline(rng, tol);
        const DensityOperator composite = composite_state(p.pipeline, p.trajectory, tol);
        const ComplexMatrix &final_state = p.trajectory.steps.back().matrix();
        for (std::size_t n = 0; n < dims[0]; ++n) {
            const EventOperator pn = projector(HilbertSpace(dims[0]), {n});
            const ComplexMatrix lift_a =
                kron(kron(pn.matrix(), identity(dims[1])), identity(dims[2]));
            m.value = std::max(
                m.value, std::abs(trace(final_state * lift_a).real() -
                                  marginal_probability(composite, pn, Factor::a)));
            for (std::size_t a = 0; a < dims[1]; ++a) {
                const EventOperator pa = projector(HilbertSpace(dims[1]), {a});
                const ComplexMatrix lift_ab =
                    kron(kron(pn.matrix(), pa.matrix()), identity(dims[2]));
                m.value = std::max(m.value,
                                   std::abs(trace(final_state * lift_ab).real() -
                                            joint_probability(composite, pn, pa)));
            }
        }
    }
    return m;
}

// qdt ------------------------------------------------------------------------

Measurement alternation_prior(Rng &rng, const Tolerance &) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t n = uniform_index(rng, 2, 8);
        const auto q = attraction_prior(n, random_signs(rng, n));
        m.value = std::max(m.value, std::abs(std::accumulate(q.begin(), q.end(), 0.0)));
    }
    return m;
}

Measurement alternation_quantum(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t da = uniform_index(rng, 2, 4);
        const std::size_t db = uniform_index(rng, 2, 4);
        const LatticeEvaluation e =
            evaluate_lattice(random_density(da * db, rng), random_lattice(rng, da, db), tol);
        m.value = std::max(m.value, e.alternation_defect);
    }
    return m;
}

Measurement alternation_explicit(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t n = uniform_index(rng, 2, 6);
        const std::vector<double> f = random_utilities(rng, n);
        // Zero-sum attraction small enough to keep every p in [0, 1].
        std::vector<double> q(n);
        for (double &v : q) {
            v = uniform_real(rng, -1.0, 1.0);
        }
        const double mean = std::accumulate(q.begin(), q.end(), 0.0) / double(n);
        const double floor = *std::min_element(f.begin(), f.end());
        for (double &v : q) {
            v = (v - mean) * floor / 2.0;
        }
        q.back() = -std::accumulate(q.begin(), q.end() - 1, 0.0);
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < n; ++k) {
            labels.push_back("pi" + std::to_string(k + 1));
        }
        AttractionSpec a;
        a.mode = AttractionMode::explicit_values;
        a.magnitudes = q;
        const PredictionReport r =
            predict(ProspectLattice(labels), {UtilityMode::direct_factors, f}, a, tol);
        m.value = std::max(m.value, r.alternation_defect);

        // A shifted copy must be rejected.
        a.magnitudes[0] += 1e-3;
        try {
            (void)predict(ProspectLattice(labels), {UtilityMode::direct_factors, f}, a,
                          tol);
            return {inf, s + 1};
        } catch (const Error &) {
        }
    }
    return m;
}

// Random utilities under the quarter-law prior with random information
// levels. Accepted specs must be normalized and in range; rejected specs
// must really leave [0, 1].
struct PredictionSweep {
    double normalization = 0.0;
    double range = 0.0;
    bool rejection_consistent = true;
};

PredictionSweep prediction_sweep(Rng &rng, const Tolerance &tol) {
    PredictionSweep sweep;
    for (std::size_t s = 0; s < 100; ++s) {
        const std::size_t n = uniform_index(rng, 2, 6);
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < n; ++k) {
            labels.push_back("pi" + std::to_string(k + 1));
        }
        const std::vector<double> f = random_utilities(rng, n);
        AttractionSpec a;
        a.signs = random_signs(rng, n);
        a.mu = uniform_real(rng, 0.0, 4.0);
        try {
            const PredictionReport r = predict(
                ProspectLattice(labels), {UtilityMode::direct_factors, f}, a, tol);
            sweep.normalization = std::max(sweep.normalization, r.normalization_defect);
            for (const auto &row : r.rows) {
                sweep.range = std::max({sweep.range, -row.probability,
                                        row.probability - 1.0,
                                        std::abs(row.attraction) - 1.0});
            }
        } catch (const Error &) {
            const auto q =
                decay_attraction(attraction_prior(n, a.signs), a.mu, a.mu_c);
            bool outside = false;
            for (std::size_t k = 0; k < n; ++k) {
                const double p = f[k] + q[k];
                outside = outside || p < -tol.eps_equality || p > 1.0 + tol.eps_equality;
            }
            sweep.rejection_consistent = sweep.rejection_consistent && outside;
        }
    }
    return sweep;
}

Measurement prediction_normalized(Rng &rng, const Tolerance &tol) {
    const PredictionSweep sweep = prediction_sweep(rng, tol);
    return {sweep.rejection_consistent ? sweep.normalization : inf, 100};
}

Measurement prediction_in_range(Rng &rng, const Tolerance &tol) {
    const PredictionSweep sweep = prediction_sweep(rng, tol);
    return {sweep.rejection_consistent ? std::max(0.0, sweep.range) : inf, 100};
}

Measurement quarter_law_mean(Rng &rng, const Tolerance &) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t n = uniform_index(rng, 2, 12);
        const auto q = attraction_prior(n, random_signs(rng, n));
        double mean = 0.0;
        for (double v : q) {
            mean += std::abs(v);
        }
        m.value = std::max(m.value, std::abs(mean / double(n) - quarter_law));
        try {
            const std::vector<int> same(n, s % 2 == 0 ? 1 : -1);
            (void)attraction_prior(n, same);
            return {inf, s + 1};
        } catch (const Error &) {
        }
    }
    return m;
}

Measurement decay_limit_ordering(Rng &rng, const Tolerance &tol) {
    Measurement m{0.0, 100};
    for (std::size_t s = 0; s < m.samples; ++s) {
        const std::size_t n = uniform_index(rng, 2, 6);
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < n; ++k) {
            labels.push_back("pi" + std::to_string(k + 1));
        }
        AttractionSpec a;
        a.signs = random_signs(rng, n);
        a.mu_c = uniform_real(rng, 0.1, 10.0);
        a.mu = 50.0 * a.mu_c;
        const PredictionReport r =
            predict(ProspectLattice(labels),
                    {UtilityMode::direct_factors, random_utilities(rng, n)}, a, tol);
        for (const auto &row : r.rows) {
            if (row.rank_by_probability != row.rank_by_utility) {
                m.value = 1.0;
            }
        }
    }
    return m;
}

Order expected_order(double a, double b) {
    return a > b ? Order::more : (a < b ? Order::less : Order::equal);
}

// Every pair's three orderings agree with the row values, and the
// prisoner dilemma shows useful and preferable orderings disagreeing.
Measurement classification_trichotomy(Rng &rng, const Tolerance &tol) {
    const Scenario pd = prisoner_dilemma_scenario();
    const PredictionReport pd_report =
        predict(pd.lattice, pd.utility, pd.attraction, tol);
    const PairClassification witness = classify_pair(pd_report, 0, 1);
    double mismatches =
        (witness.useful == Order::more && witness.preferable == Order::less) ? 0.0
                                                                               : 1.0;
    for (std::size_t s = 0; s < 50; ++s) {
        const std::size_t n = uniform_index(rng, 2, 5);
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < n; ++k) {
            labels.push_back("pi" + std::to_string(k + 1));
        }
        AttractionSpec a;
        a.signs = random_signs(rng, n);
        a.mu = 3.0;
        const PredictionReport r =
            predict(ProspectLattice(labels),
                    {UtilityMode::direct_factors, random_utilities(rng, n)}, a, tol);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const PairClassification c = classify_pair(r, i, j);
                const auto &ri = r.rows[i];
                const auto &rj = r.rows[j];
                mismatches +=
                    (c.useful != expected_order(ri.utility, rj.utility)) +
                    (c.attractive != expected_order(ri.attraction, rj.attraction)) +
                    (c.preferable != expected_order(ri.probability, rj.probability));
            }
        }
    }
    return {mismatches, 51};
}

Measurement prisoner_dilemma(Rng &, const Tolerance &tol) {
    const Scenario pd = prisoner_dilemma_scenario();
    const PredictionReport r = predict(pd.lattice, pd.utility, pd.attraction, tol);
    const EmpiricalComparison c = compare_to_empirical(r, pd.empirical);
    return {std::max({std::abs(r.rows[0].probability - 0.35),
                      std::abs(r.rows[1].probability - 0.65),
                      std::abs(c.max_deviation - 0.02)}),
            1};
}

Measurement decayed_prisoner_dilemma(Rng &, const Tolerance &tol) {
    Scenario pd = prisoner_dilemma_scenario();
    pd.attraction.mu = std::log(5.0);
    const PredictionReport r = predict(pd.lattice, pd.utility, pd.attraction, tol);
    return {std::max(std::abs(r.rows[0].probability - 0.55),
                     std::abs(r.rows[1].probability - 0.45)),
            1};
}

Measurement reversal_threshold(Rng &, const Tolerance &) {
    const auto mu_star =
        preference_reversal_threshold({0.60, 0.40}, {-0.25, 0.25}, 1.0);
    return {mu_star ? std::abs(*mu_star - std::log(2.5)) : inf, 1};
}

const std::vector<CheckDef> &check_table() {
    static const std::vector<CheckDef> table{
        {"numkernel", "kron.associative", 0.0, false, kron_associative},
        {"numkernel", "partial_trace.preserves_trace", 1e-10, false,
         partial_trace_preserves_trace},
        {"numkernel", "eig_hermitian.reconstruction", 1e-10, false, eig_reconstruction},
        {"numkernel", "partial_trace.kron_factorization", 1e-10, false,
         partial_trace_factorizes},
        {"qstate", "pure_density.idempotent", 1e-10, false, pure_density_idempotent},
        {"qstate", "evolve.trace_and_hermiticity", 1e-10, false, evolve_preserves},
        {"qstate", "dephase.idempotent", 1e-10, false, dephase_idempotent},
        {"qstate", "dephase.valid_and_diagonal_kept", 1e-10, false,
         dephase_keeps_diagonal},
        {"eventlogic", "join.commutative", 1e-10, false, join_commutative},
        {"eventlogic", "join.associative", 1e-10, false, join_associative},
        {"eventlogic", "meet.associative", 1e-10, false, meet_associative},
        {"eventlogic", "join_meet.idempotent", 1e-10, false, lattice_idempotent},
        {"eventlogic", "spin.non_distributive", 1e-12, false, spin_non_distributivity},
        {"eventlogic", "inconclusive.not_union", 1e-10, true, inconclusive_not_union},
        {"eventlogic", "prospect.scaling", 1e-10, false, prospect_scaling},
        {"eventlogic", "lift_degeneracy.sums", 1e-8, false, lift_sums},
        {"probability", "luders.symmetry", 1e-12, false, luders_symmetry},
        {"probability", "luders.degenerate_asymmetry", 1e-3, true,
         luders_degenerate_asymmetry},
        {"probability", "luders.commuting_delta", 0.0, false, luders_commuting_exact},
        {"probability", "luders.commuting_delta_rotated", 1e-12, false,
         luders_commuting_rotated},
        {"probability", "wigner.relation", 1e-12, false, wigner_relation},
        {"probability", "decomposition.exact", 1e-14, false, decomposition_exact},
        {"probability", "theorem.separable_prospect", 0.0, false,
         separable_prospect_no_attraction},
        {"probability", "theorem.diagonal_state", 1e-12, false,
         diagonal_state_no_attraction},
        {"probability", "bounds", 1e-12, false, probability_bounds},
        {"channels", "outputs.valid_density", 1e-12, false, channel_outputs_valid},
        {"channels", "pipeline.product_cuts", 1e-10, false, pipeline_product_cuts},
        {"channels", "choi.positive", 1e-10, false, choi_positive},
        {"channels", "measurement.idempotent", 1e-10, false, measurement_idempotent},
        {"channels", "evolution.preserves_spectrum", 1e-10, false,
         evolution_preserves_spectrum},
        {"channels", "measurement.changes_spectrum", 1e-3, true,
         measurement_changes_spectrum},
        {"channels", "measurement.nonunitary", 1e-3, true, measurement_nonunitary},
        {"channels", "pipeline.static_consistency", 1e-12, false,
         pipeline_static_consistency},
        {"qdt", "alternation.prior", 1e-12, false, alternation_prior},
        {"qdt", "alternation.quantum_state", 1e-12, false, alternation_quantum},
        {"qdt", "alternation.explicit", 1e-12, false, alternation_explicit},
        {"qdt", "predict.normalized", 1e-12, false, prediction_normalized},
        {"qdt", "predict.in_range", 0.0, false, prediction_in_range},
        {"qdt", "quarter_law.mean", 1e-15, false, quarter_law_mean},
        {"qdt", "decay.limit_ordering", 0.0, false, decay_limit_ordering},
        {"qdt", "classification.trichotomy", 0.0, false, classification_trichotomy},
        {"qdt", "prisoner_dilemma.reproduction", 1e-12, false, prisoner_dilemma},
        {"qdt", "decay.prisoner_dilemma", 1e-12, false, decayed_prisoner_dilemma},
        {"qdt", "decay.reversal_threshold", 1e-9, false, reversal_threshold},
    };
    return table;
}

} // namespace

std::size_t VerifySummary::failures() const {
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(), [](const CheckResult &c) { return !c.passed; }));
}

VerifySummary run_verify_suite(std::uint64_t seed, const Tolerance &tol) {
    tol.validate();
    VerifySummary summary;
    const auto &table = check_table();
    for (std::size_t k = 0; k < table.size(); ++k) {
        const CheckDef &def = table[k];
        CheckResult r{def.module, def.name, 0, 0.0, def.threshold, def.witness,
                      false, {}};
        // Each check owns a stream so that adding or removing checks does
        // not disturb the others.
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k)};
        Rng rng(seq);
        try {
            const Measurement m = def.run(rng, tol);
            r.samples = m.samples;
            r.value = m.value;
            r.passed = def.witness ? m.value > def.threshold
                                   : m.value <= def.threshold;
        } catch (const std::exception &e) {
            r.value = std::numeric_limits<double>::quiet_NaN();
            r.detail = e.what();
        }
        summary.checks.push_back(std::move(r));
    }
    return summary;
}

} // namespace qdt
