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
const HilbertSpace qubit(2);
const HilbertSpace two_qubits(4);

EventOperator z(std::size_t k) { return projector(qubit, {k}); }

EventOperator x(int sign) {
    return projector_onto(qubit, oracle::from_rows({{r2}, {sign * r2}}));
}

DensityOperator density(const ComplexMatrix &m) {
    return DensityOperator(HilbertSpace(static_cast<std::size_t>(m.rows())), m);
}

Prospect prospect(std::size_t n, const ComplexVector &b, std::size_t da = 2) {
    return Prospect(HilbertSpace(da), n,
                    InconclusiveEvent(HilbertSpace(static_cast<std::size_t>(b.size())), b));
}

} // namespace

TEST_CASE("event_probability") {
    CHECK(event_probability(DensityOperator::maximally_mixed(qubit), z(0)) ==
          doctest::Approx(0.5));
    CHECK(event_probability(density(z(0).matrix()), z(0)) == doctest::Approx(1.0));
    // |<0|x+>|^2
    CHECK(event_probability(density(z(0).matrix()), x(1)) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS((void)event_probability(DensityOperator::maximally_mixed(HilbertSpace(3)),
                                            z(0)),
                    Error);
}

TEST_CASE("clamp_probability") {
    CHECK(clamp_probability(0.3).value == 0.3);
    CHECK_FALSE(clamp_probability(1.0 + 1e-14).raw.has_value());
    const ClampedProbability c = clamp_probability(-1e-9);
    CHECK(c.value == 0.0);
    REQUIRE(c.raw.has_value());
    CHECK(*c.raw == -1e-9);
}

TEST_CASE("luders_state") {
    CHECK(frobenius_norm(luders_state(DensityOperator::maximally_mixed(qubit), z(0)).matrix() -
                         z(0).matrix()) < 1e-15);
    CHECK(frobenius_norm(luders_state(density(z(0).matrix()), z(0)).matrix() -
                         z(0).matrix()) < 1e-15);
    const DensityOperator plus = density(oracle::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
    CHECK(frobenius_norm(luders_state(plus, z(0)).matrix() - z(0).matrix()) < 1e-15);
    try {
        (void)luders_state(density(z(0).matrix()), z(1));
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(std::string(e.what()) == "conditioning on null event");
    }
}

TEST_CASE("luders_probability") {
    Rng rng(41);
    SUBCASE("mutually unbiased spin bases give one half") {
        for (int s = 0; s < 20; ++s) {
            const SequentialPair pair(random_density(2, rng), z(s % 2), x(s % 3 ? 1 : -1));
            CHECK(luders_probability(pair) == doctest::Approx(0.5).epsilon(1e-14));
        }
    }
    SUBCASE("commuting events give the Kronecker delta") {
        const DensityOperator rho = random_density(2, rng);
        for (std::size_t n = 0; n < 2; ++n) {
            for (std::size_t a = 0; a < 2; ++a) {
                CHECK(luders_probability(SequentialPair(rho, z(a), z(n))) ==
                      (n == a ? 1.0 : 0.0));
            }
        }
    }
    SUBCASE("degenerate first event matches the trace sum") {
        const HilbertSpace h(3);
        for (int s = 0; s < 20; ++s) {
            const DensityOperator rho = random_density(3, rng);
            const EventOperator first = projector_onto(h, random_ginibre(3, 2, rng));
            const EventOperator second = projector_onto(h, random_ginibre(3, 1, rng));
            const ComplexMatrix &pa = first.matrix();
            const ComplexMatrix &pn = second.matrix();
            const double expected =
                oracle::trace_of_product(rho.matrix(),
                                         oracle::matmul(oracle::matmul(pa, pn), pa))
                    .real() /
                oracle::trace_of_product(rho.matrix(), pa).real();
            CHECK(std::abs(luders_probability(SequentialPair(rho, first, second)) -
                           expected) < 1e-12);
        }
    }
    SUBCASE("rank-one symmetry over seeded draws") {
        for (int s = 0; s < 100; ++s) {
            const std::size_t d = 2 + s % 4;
            const HilbertSpace h(d);
            const SequentialPair pair(random_density(d, rng),
                                      projector_onto(h, random_ginibre(d, 1, rng)),
                                      projector_onto(h, random_ginibre(d, 1, rng)));
            CHECK(std::abs(luders_probability(pair) - luders_probability(pair.reversed())) <=
                  1e-12);
        }
    }
    SUBCASE("degenerate events break the symmetry") {
        const HilbertSpace h(3);
        double gap = 0.0;
        for (int s = 0; s < 10; ++s) {
            const SequentialPair pair(random_density(3, rng),
                                      projector_onto(h, random_ginibre(3, 2, rng)),
                                      projector_onto(h, random_ginibre(3, 1, rng)));
            gap = std::max(gap, std::abs(luders_probability(pair) -
                                         luders_probability(pair.reversed())));
        }
        CHECK(gap > 1e-3);
    }
    SUBCASE("non-projector events are rejected") {
        const EventOperator half(qubit, 0.5 * identity(2), EventKind::prospect);
        CHECK_THROWS_AS(SequentialPair(random_density(2, rng), half, z(0)), Error);
    }
}

TEST_CASE("wigner_probability") {
    Rng rng(42);
    CHECK(wigner_probability(
              SequentialPair(DensityOperator::maximally_mixed(qubit), z(0), x(1))) ==
          doctest::Approx(0.25).epsilon(1e-15));
    const std::array<double, 2> w{0.3, 0.7};
    const DensityOperator diag(qubit, diagonal(w));
    CHECK(wigner_probability(SequentialPair(diag, z(1), z(1))) ==
          doctest::Approx(0.7).epsilon(1e-15));
    for (int s = 0; s < 100; ++s) {
        const HilbertSpace h(3);
        const DensityOperator rho = random_density(3, rng);
        const EventOperator first = projector_onto(h, random_ginibre(3, 1, rng));
        const EventOperator second = projector_onto(h, random_ginibre(3, 1, rng));
        const SequentialPair pair(rho, first, second);
        const double marginal = oracle::trace_of_product(rho.matrix(), first.matrix()).real();
        CHECK(std::abs(wigner_probability(pair) - luders_probability(pair) * marginal) <=
              1e-12);
    }
}

TEST_CASE("kirkwood_form") {
    const std::array<double, 2> w{0.3, 0.7};
    const DensityOperator diag(qubit, diagonal(w));
    CHECK(kirkwood_form(diag, z(0), z(0)).imag() == 0.0);
    CHECK(kirkwood_form(diag, z(0), z(0)).real() == doctest::Approx(0.3));
    // A y-polarized state makes tr(rho P_z P_x) complex.
    const DensityOperator y_plus(qubit,
                                 oracle::from_rows({{0.5, Complex(0, -0.5)},
                                                    {Complex(0, 0.5), 0.5}}));
    const Complex k = kirkwood_form(y_plus, z(0), x(1));
    const Complex expected = oracle::trace_of_product(
        y_plus.matrix(), oracle::matmul(z(0).matrix(), x(1).matrix()));
    CHECK(std::abs(k - expected) < 1e-15);
    CHECK(std::abs(k.imag()) > 0.1);
    const Complex k2 = kirkwood_form(density(z(0).matrix()), z(0), x(1));
    CHECK(std::abs(k2 - Complex(0.5, 0.0)) < 1e-15);
}

TEST_CASE("joint, marginal and conditional probabilities") {
    const DensityOperator bell = density(oracle::bell_density());
    const DensityOperator zero_zero(two_qubits, oracle::kron(z(0).matrix(), z(0).matrix()));
    CHECK(joint_probability(zero_zero, z(0), z(0)) == 1.0);
    CHECK(joint_probability(bell, z(0), z(0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(joint_probability(bell, z(0), z(1)) == 0.0);
    CHECK(marginal_probability(bell, z(0), Factor::a) == doctest::Approx(0.5));
    CHECK(marginal_probability(bell, z(0), Factor::b) == doctest::Approx(0.5));
    CHECK(marginal_probability(bell, projector(qubit, {0, 1}), Factor::a) ==
          doctest::Approx(1.0));
    CHECK(conditional_probability(bell, z(0), z(0)) == doctest::Approx(1.0));

    Rng rng(43);
    SUBCASE("product states factorize") {
        for (int s = 0; s < 20; ++s) {
            const DensityOperator ra = random_density(2, rng);
            const DensityOperator rb = random_density(3, rng);
            const DensityOperator rab(HilbertSpace(6), oracle::kron(ra.matrix(), rb.matrix()));
            const EventOperator pb = projector(HilbertSpace(3), {1});
            const double pa = oracle::trace_of_product(ra.matrix(), z(1).matrix()).real();
            CHECK(std::abs(marginal_probability(rab, z(1), Factor::a) - pa) < 1e-14);
            CHECK(std::abs(conditional_probability(rab, z(1), pb) - pa) < 1e-14);
        }
    }
    SUBCASE("conditionals are not symmetric on correlated states") {
        const DensityOperator rho = random_density(4, rng);
        const double ab = conditional_probability(rho, z(0), z(1));
        const double ba = reverse_conditional_probability(rho, z(0), z(1));
        const double joint = oracle::trace_of_product(
                                 rho.matrix(), oracle::kron(z(0).matrix(), z(1).matrix()))
                                 .real();
        const double mb = oracle::reduce(rho.matrix(), 2, 2, false)(1, 1).real();
        const double ma = oracle::reduce(rho.matrix(), 2, 2, true)(0, 0).real();
        CHECK(std::abs(ab - joint / mb) < 1e-14);
        CHECK(std::abs(ba - joint / ma) < 1e-14);
        CHECK(std::abs(ab - ba) > 1e-3);
    }
    SUBCASE("null conditioning marginal") {
        CHECK_THROWS_AS((void)conditional_probability(zero_zero, z(0), z(1)), Error);
    }
    SUBCASE("factorization mismatch") {
        CHECK_THROWS_AS((void)joint_probability(bell, z(0), projector(HilbertSpace(3), {0})),
                        Error);
    }
}

TEST_CASE("prospect_probability") {
    const ComplexVector plus = oracle::vec({r2, r2});
    SUBCASE("state from |0> (x) |+>") {
        const ProbabilityDecomposition d =
            prospect_probability(density(oracle::zero_plus_density()), prospect(0, plus));
        CHECK(d.total == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(d.utility_factor == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(d.attraction_factor == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("Bell state") {
        const ProbabilityDecomposition d =
            prospect_probability(density(oracle::bell_density()), prospect(0, plus));
        CHECK(d.total == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(d.utility_factor == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(d.attraction_factor == 0.0);
    }
    Rng rng(44);
    SUBCASE("agrees with the definition on random inputs") {
        for (int s = 0; s < 100; ++s) {
            const std::size_t da = 2 + s % 3;
            const std::size_t db = 2 + (s / 3) % 3;
            const DensityOperator rho = random_density(da * db, rng);
            const ComplexVector b = random_state(db, rng).amplitudes();
            const std::size_t n = static_cast<std::size_t>(s) % da;
            const oracle::Decomposition o = oracle::prospect(rho.matrix(), da, n, b);
            const ProbabilityDecomposition d = prospect_probability(rho, prospect(n, b, da));
            const double scale = std::max({std::abs(o.p), std::abs(o.f), std::abs(o.q)});
            CHECK(std::abs(d.total - o.p) <= 1e-14 * scale);
            CHECK(std::abs(d.utility_factor - o.f) <= 1e-14 * scale);
            CHECK(std::abs(d.attraction_factor - o.q) <= 1e-14 * scale);
            CHECK(d.total == d.utility_factor + d.attraction_factor);
            CHECK(d.total >= -1e-12);
            CHECK(d.total <= 1.0 + 1e-12);
            CHECK(std::abs(d.attraction_factor) <= 1.0);
        }
    }
    SUBCASE("product-diagonal states have no attraction") {
        for (int s = 0; s < 100; ++s) {
            std::vector<double> w(6);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            double total = 0.0;
            for (double &v : w) {
                total += (v = u(rng));
            }
            for (double &v : w) {
                v /= total;
            }
            const DensityOperator rho(HilbertSpace(6), diagonal(w));
            const ProbabilityDecomposition d =
                prospect_probability(rho, prospect(s % 2, random_state(3, rng).amplitudes()));
            CHECK(std::abs(d.attraction_factor) <= 1e-12);
        }
    }
    SUBCASE("single-amplitude prospects have exactly zero attraction") {
        for (int s = 0; s < 100; ++s) {
            ComplexVector b = ComplexVector::Zero(3);
            b(s % 3) = std::polar(1.0, 0.1 * s);
            const ProbabilityDecomposition d =
                prospect_probability(random_density(6, rng), prospect(s % 2, b));
            CHECK(d.attraction_factor == 0.0);
        }
    }
}

TEST_CASE("conditional_under_uncertainty") {
    Rng rng(45);
    SUBCASE("single amplitude reduces to the plain conditional") {
        const DensityOperator rho = random_density(4, rng);
        const UncertainConditional c =
            conditional_under_uncertainty(rho, prospect(1, oracle::vec({0, 1})));
        CHECK(std::abs(c.value - conditional_probability(rho, z(1), z(1))) < 1e-14);
    }
    SUBCASE("diagonal state") {
        const std::array<double, 4> w{0.1, 0.2, 0.3, 0.4};
        const DensityOperator rho(two_qubits, diagonal(w));
        const ComplexVector b = oracle::vec({0.6, 0.8});
        const UncertainConditional c = conditional_under_uncertainty(rho, prospect(0, b));
        const double num = 0.36 * 0.1 + 0.64 * 0.2;
        const double den = 0.36 * (0.1 + 0.3) + 0.64 * (0.2 + 0.4);
        CHECK(c.value == doctest::Approx(num / den).epsilon(1e-14));
        CHECK(c.denominator.attraction_factor == 0.0);
    }
    SUBCASE("|0> (x) |+> with the matching uncertain event") {
        const UncertainConditional c = conditional_under_uncertainty(
            density(oracle::zero_plus_density()), prospect(0, oracle::vec({r2, r2})));
        CHECK(c.numerator.total == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(c.denominator.total == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(c.denominator.utility_factor == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(c.denominator.attraction_factor == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(c.value == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("null denominator") {
        const DensityOperator rho(two_qubits, oracle::kron(z(0).matrix(), z(0).matrix()));
        CHECK_THROWS_AS(
            (void)conditional_under_uncertainty(rho, prospect(0, oracle::vec({0, 1}))),
            Error);
    }
}
