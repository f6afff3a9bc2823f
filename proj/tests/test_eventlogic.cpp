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

#include <doctest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "qdt/error.hpp"
#include "qdt/eventlogic.hpp"
#include "qdt/probability.hpp"
#include "qdt/random.hpp"

using namespace qdt;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

EventOperator x_plus() {
    return projector_onto(HilbertSpace(2), oracle::from_rows({{r2}, {r2}}));
}

double dist(const EventOperator &a, const ComplexMatrix &b) {
    return frobenius_norm(a.matrix() - b);
}

} // namespace

TEST_CASE("projector") {
    const std::array<double, 3> d{1, 0, 1};
    CHECK(projector(HilbertSpace(2), {0}).matrix() == oracle::from_rows({{1, 0}, {0, 0}}));
    CHECK(projector(HilbertSpace(3), {0, 2}).matrix() == diagonal(d));
    CHECK(projector(HilbertSpace(4), {0, 1, 2, 3}).matrix() == identity(4));
    CHECK(projector(HilbertSpace(3), {0, 2}, EventKind::union_of).kind() ==
          EventKind::union_of);
    const std::vector<std::size_t> none;
    CHECK_THROWS_AS((void)projector(HilbertSpace(2), none), Error);
    CHECK_THROWS_AS((void)projector(HilbertSpace(2), {2}), Error);
}

TEST_CASE("EventOperator validation") {
    CHECK_THROWS_AS(EventOperator(HilbertSpace(2), 0.5 * identity(2), EventKind::projector),
                    Error);
    CHECK_NOTHROW(EventOperator(HilbertSpace(2), 0.5 * identity(2), EventKind::prospect));
    CHECK_THROWS_AS(EventOperator(HilbertSpace(2), 2.0 * identity(2), EventKind::prospect),
                    Error);
}

TEST_CASE("join") {
    const HilbertSpace spin(2);
    SUBCASE("z+ and z- join to the identity") {
        CHECK(dist(join(projector(spin, {0}), projector(spin, {1})), identity(2)) < 1e-15);
    }
    SUBCASE("join with the zero event") {
        const EventOperator zero = projector_onto(spin, ComplexMatrix(2, 0));
        CHECK(dist(join(x_plus(), zero), x_plus().matrix()) < 1e-14);
    }
    SUBCASE("two random rank-one projectors give rank two") {
        Rng rng(31);
        for (int s = 0; s < 20; ++s) {
            const ComplexMatrix u = random_ginibre(4, 1, rng);
            const ComplexMatrix v = random_ginibre(4, 1, rng);
            const EventOperator j = join(projector_onto(HilbertSpace(4), u),
                                         projector_onto(HilbertSpace(4), v));
            CHECK(std::abs(trace(j.matrix()) - 2.0) < 1e-12);
            // u and v both lie in the range of the join.
            CHECK((j.matrix() * u - u).norm() < 1e-12 * u.norm());
            CHECK((j.matrix() * v - v).norm() < 1e-12 * v.norm());
        }
    }
    SUBCASE("rejects non-projectors") {
        const EventOperator half(spin, 0.5 * identity(2), EventKind::prospect);
        CHECK_THROWS_AS((void)join(half, x_plus()), Error);
    }
}

TEST_CASE("meet") {
    const HilbertSpace spin(2);
    SUBCASE("x+ and z+ have no common event") {
        CHECK(frobenius_norm(meet(x_plus(), projector(spin, {0})).matrix()) < 1e-15);
    }
    SUBCASE("meet with the identity") {
        CHECK(dist(meet(x_plus(), projector(spin, {0, 1})), x_plus().matrix()) < 1e-14);
    }
    SUBCASE("diagonal intersection") {
        const HilbertSpace h(3);
        const std::array<double, 3> mid{0, 1, 0};
        CHECK(dist(meet(projector(h, {0, 1}), projector(h, {1, 2})), diagonal(mid)) <
              1e-14);
    }
}

TEST_CASE("lattice laws on random projector triples") {
    Rng rng(32);
    for (int s = 0; s < 100; ++s) {
        const std::size_t d = 3 + s % 2;
        const ComplexMatrix basis = random_unitary(d, rng).matrix();
        auto pick = [&](int mask) {
            std::vector<Eigen::Index> cols;
            for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(d); ++c) {
                if (mask & (1 << c)) {
                    cols.push_back(c);
                }
            }
            ComplexMatrix v(static_cast<Eigen::Index>(d),
                            static_cast<Eigen::Index>(cols.size()));
            for (std::size_t k = 0; k < cols.size(); ++k) {
                v.col(static_cast<Eigen::Index>(k)) = basis.col(cols[k]);
            }
            return projector_onto(HilbertSpace(d), v);
        };
        std::uniform_int_distribution<int> mask(1, (1 << d) - 1);
        const EventOperator a = s % 3 == 0 ? projector_onto(HilbertSpace(d),
                                                            random_ginibre(d, 2, rng))
                                           : pick(mask(rng));
        const EventOperator b = pick(mask(rng));
        const EventOperator c = pick(mask(rng));
        CHECK(dist(join(a, b), join(b, a).matrix()) < 1e-10);
        CHECK(dist(join(join(a, b), c), join(a, join(b, c)).matrix()) < 1e-10);
        CHECK(dist(meet(meet(a, b), c), meet(a, meet(b, c)).matrix()) < 1e-10);
        CHECK(dist(join(a, a), a.matrix()) < 1e-10);
        CHECK(dist(meet(a, a), a.matrix()) < 1e-10);
        CHECK(dist(meet(a, b), meet(b, a).matrix()) < 1e-10);
    }
}

TEST_CASE("spin-1/2 non-distributivity") {
    const HilbertSpace spin(2);
    const EventOperator a = x_plus();
    const EventOperator b1 = projector(spin, {0});
    const EventOperator b2 = projector(spin, {1});
    CHECK(dist(meet(a, join(b1, b2)), a.matrix()) <= 1e-12);
    CHECK(frobenius_norm(join(meet(a, b1), meet(a, b2)).matrix()) <= 1e-12);
}

TEST_CASE("lift_degeneracy") {
    const std::array<double, 3> levels{1, 1, 2};
    const ComplexMatrix obs = diagonal(levels);
    const auto nu = default_nu_sequence();
    const HilbertSpace h(3);

    SUBCASE("maximally mixed state") {
        const std::array<double, 3> g{0, 1, 0};
        const LiftResult r =
            lift_degeneracy(obs, diagonal(g), nu, DensityOperator::maximally_mixed(h));
        REQUIRE(r.groups.size() == 2);
        REQUIRE(r.groups[0].members.size() == 2);
        for (std::size_t m : r.groups[0].members) {
            CHECK(r.subevents[m].limit == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        }
    }
    SUBCASE("basis state") {
        const std::array<double, 3> g{0, 1, 0};
        const DensityOperator e0(h, projector(h, {0}).matrix());
        const LiftResult r = lift_degeneracy(obs, diagonal(g), nu, e0);
        CHECK(r.subevents[r.groups[0].members[0]].limit ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(r.subevents[r.groups[0].members[1]].limit) < 1e-12);
    }
    SUBCASE("coupled block matches the restricted perturbation eigenvectors") {
        const ComplexMatrix gamma = oracle::from_rows({{0.3, Complex(0.5, -0.2), 0.1},
                                                       {Complex(0.5, 0.2), -0.4, 0.2},
                                                       {0.1, 0.2, 0.7}});
        const ComplexMatrix block = gamma.topLeftCorner(2, 2);
        const auto values = oracle::eigenvalues_2x2(block);
        Rng rng(33);
        for (int s = 0; s < 20; ++s) {
            const DensityOperator rho = random_density(3, rng);
            const LiftResult r = lift_degeneracy(obs, gamma, nu, rho);
            for (std::size_t j = 0; j < 2; ++j) {
                ComplexVector w = ComplexVector::Zero(3);
                w.head(2) = oracle::eigenvector_2x2(block, values[j]);
                const double expected =
                    oracle::trace_of_product(rho.matrix(), oracle::outer(w, w)).real();
                CHECK(std::abs(r.subevents[j].limit - expected) <= 1e-6);
            }
            const double group = (rho.matrix()(0, 0) + rho.matrix()(1, 1)).real();
            CHECK(std::abs(r.subevents[0].limit + r.subevents[1].limit - group) <= 1e-8);
            CHECK(r.subevents[0].iterates.size() == nu.size());
        }
    }
    SUBCASE("random symmetry breaker: nonnegative limits summing to the group") {
        Rng rng(34);
        for (int s = 0; s < 20; ++s) {
            const ComplexMatrix u = random_unitary(3, rng).matrix();
            const LiftResult r = lift_degeneracy(
                hermitian_part(u * obs * dagger(u)), default_symmetry_breaker(3, 100 + s),
                nu, random_density(3, rng));
            for (const auto &g : r.groups) {
                CHECK(std::abs(g.limit_sum - g.probability) <= 1e-10);
            }
            for (const auto &sub : r.subevents) {
                CHECK(sub.limit >= -1e-10);
            }
        }
    }
    SUBCASE("ineffective symmetry breaking") {
        try {
            (void)lift_degeneracy(obs, ComplexMatrix::Zero(3, 3), nu,
                                  DensityOperator::maximally_mixed(h));
            FAIL("expected an error");
        } catch (const Error &e) {
            CHECK(std::string(e.what()) == "ineffective symmetry breaking");
        }
    }
    SUBCASE("nu sequence preconditions") {
        const std::array<double, 3> g{0, 1, 0};
        const std::array<double, 2> increasing{1e-4, 1e-3};
        const std::array<double, 2> too_large{1e-2, 1e-3};
        const DensityOperator rho = DensityOperator::maximally_mixed(h);
        CHECK_THROWS_AS((void)lift_degeneracy(obs, diagonal(g), increasing, rho), Error);
        CHECK_THROWS_AS((void)lift_degeneracy(obs, diagonal(g), too_large, rho), Error);
    }
}

TEST_CASE("degenerate_event") {
    const std::array<double, 3> levels{1, 1, 2};
    const DegenerateEvent e = degenerate_event(diagonal(levels), 1.0);
    CHECK(e.subevent_vectors.cols() == 2);
    const std::array<double, 3> p{1, 1, 0};
    CHECK(frobenius_norm(e.projector() - diagonal(p)) < 1e-14);
}

TEST_CASE("inconclusive_operator") {
    SUBCASE("single amplitude reduces to a projector") {
        const InconclusiveEvent b(HilbertSpace(2), oracle::vec({1, 0}));
        CHECK(inconclusive_operator(b).matrix() == oracle::from_rows({{1, 0}, {0, 0}}));
        CHECK(b.operationally_testable());
    }
    SUBCASE("equal superposition") {
        const InconclusiveEvent b(HilbertSpace(2), oracle::vec({r2, r2}));
        CHECK(oracle::max_abs(inconclusive_operator(b).matrix() -
                              oracle::from_rows({{0.5, 0.5}, {0.5, 0.5}})) < 1e-15);
        CHECK_FALSE(b.operationally_testable());
        CHECK(inconclusive_operator(b).kind() == EventKind::inconclusive);
    }
    SUBCASE("complex amplitudes") {
        const ComplexVector b = oracle::vec({0.6, Complex(0, 0.8)});
        const ComplexMatrix p =
            inconclusive_operator(InconclusiveEvent(HilbertSpace(2), b)).matrix();
        CHECK(oracle::max_abs(p - oracle::outer(b, b)) < 1e-15);
        CHECK(std::abs(p(0, 1) - Complex(0, -0.48)) < 1e-15);
        CHECK(std::abs(p(1, 0) - Complex(0, 0.48)) < 1e-15);
    }
    SUBCASE("not a union whenever two amplitudes are nonzero") {
        Rng rng(35);
        for (int s = 0; s < 50; ++s) {
            const std::size_t d = 2 + s % 3;
            const InconclusiveEvent b(HilbertSpace(d), random_state(d, rng).amplitudes());
            std::vector<std::size_t> all(d);
            for (std::size_t k = 0; k < d; ++k) {
                all[k] = k;
            }
            const EventOperator u = projector(HilbertSpace(d), all, EventKind::union_of);
            CHECK(frobenius_norm(inconclusive_operator(b).matrix() - u.matrix()) > 0.1);
        }
    }
    SUBCASE("norm violation") {
        CHECK_THROWS_AS(InconclusiveEvent(HilbertSpace(2), oracle::vec({1, 1})), Error);
    }
}

TEST_CASE("prospect_operator") {
    const HilbertSpace a(2);
    const HilbertSpace b(2);
    SUBCASE("single amplitude") {
        const Prospect pi(a, 0, InconclusiveEvent(b, oracle::vec({1, 0})));
        const std::array<double, 4> d{1, 0, 0, 0};
        CHECK(prospect_operator(pi).matrix() == diagonal(d));
    }
    SUBCASE("equal superposition") {
        const Prospect pi(a, 0, InconclusiveEvent(b, oracle::vec({r2, r2})));
        const ComplexMatrix expected =
            oracle::kron(oracle::from_rows({{1, 0}, {0, 0}}),
                         oracle::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
        CHECK(oracle::max_abs(prospect_operator(pi).matrix() - expected) < 1e-15);
    }
    SUBCASE("square scales with the norm") {
        Rng rng(36);
        for (int s = 0; s < 50; ++s) {
            ComplexVector amp = random_state(3, rng).amplitudes();
            CHECK(frobenius_norm(prospect_matrix(2, 1, amp) * prospect_matrix(2, 1, amp) -
                                 prospect_matrix(2, 1, amp)) < 1e-12);
            amp *= 1.7;
            const ComplexMatrix p = prospect_matrix(2, 1, amp);
            CHECK(frobenius_norm(oracle::matmul(p, p) - amp.squaredNorm() * p) < 1e-12);
        }
    }
    SUBCASE("outcome index out of range") {
        CHECK_THROWS_AS(Prospect(a, 2, InconclusiveEvent(b, oracle::vec({1, 0}))), Error);
    }
}

TEST_CASE("is_separable") {
    const std::array<std::size_t, 2> dims{2, 2};
    SUBCASE("product of standard projectors") {
        const HilbertSpace h(2);
        CHECK(is_separable(kron(projector(h, {0}).matrix(), projector(h, {1}).matrix()),
                           dims)
                  .separable);
    }
    SUBCASE("superposed prospect is entangled") {
        const Prospect pi(HilbertSpace(2), 0,
                          InconclusiveEvent(HilbertSpace(2), oracle::vec({r2, r2})));
        const SeparabilityReport r = is_separable(prospect_operator(pi), dims);
        CHECK_FALSE(r.separable);
        CHECK(r.witness == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.row != r.col);
    }
    SUBCASE("weighted sums of P_n (x) P_a stay separable") {
        Rng rng(37);
        std::uniform_real_distribution<double> w(0.0, 1.0);
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        const HilbertSpace h(2);
        for (std::size_t al = 0; al < 2; ++al) {
            sum += w(rng) * kron(projector(h, {1}).matrix(), projector(h, {al}).matrix());
        }
        CHECK(is_separable(sum, dims).separable);
    }
    SUBCASE("factorization mismatch") {
        const std::array<std::size_t, 2> bad{2, 3};
        CHECK_THROWS_AS((void)is_separable(identity(4), bad), Error);
    }
}

TEST_CASE("resolution_of_unity_check") {
    SUBCASE("standard projectors") {
        for (std::size_t d = 1; d <= 5; ++d) {
            std::vector<EventOperator> ops;
            for (std::size_t k = 0; k < d; ++k) {
                ops.push_back(projector(HilbertSpace(d), {k}));
            }
            const UnityReport r = resolution_of_unity_check(ops);
            CHECK(r.passed);
            CHECK(r.defect == 0.0);
            CHECK(r.all_positive);
        }
    }
    SUBCASE("prospects with a shared rank-one P_B") {
        const InconclusiveEvent b(HilbertSpace(2), oracle::vec({0.6, 0.8}));
        std::vector<EventOperator> ops;
        for (std::size_t n = 0; n < 2; ++n) {
            ops.push_back(prospect_operator(Prospect(HilbertSpace(2), n, b)));
        }
        const UnityReport r = resolution_of_unity_check(ops);
        CHECK_FALSE(r.passed);
        const ComplexMatrix pb = oracle::outer(b.amplitudes(), b.amplitudes());
        const double expected =
            frobenius_norm(oracle::kron(identity(2), pb - identity(2)));
        CHECK(r.defect == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("identity alone") {
        const std::vector<EventOperator> ops{projector(HilbertSpace(3), {0, 1, 2})};
        CHECK(resolution_of_unity_check(ops).passed);
    }
}
