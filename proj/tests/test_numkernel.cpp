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
#include "qdt/numkernel.hpp"
#include "qdt/random.hpp"

using namespace qdt;

TEST_CASE("kron") {
    SUBCASE("identity times identity") {
        CHECK(kron(identity(2), identity(3)) == identity(6));
    }
    SUBCASE("diagonal factors") {
        const std::array<double, 2> a{1, 2};
        const std::array<double, 2> b{3, 4};
        const std::array<double, 4> ab{3, 4, 6, 8};
        CHECK(kron(diagonal(a), diagonal(b)) == diagonal(ab));
    }
    SUBCASE("matches the entrywise definition and multiplies traces") {
        Rng rng(11);
        for (int s = 0; s < 20; ++s) {
            const ComplexMatrix a = random_ginibre(2, 2, rng);
            const ComplexMatrix b = random_ginibre(2, 2, rng);
            CHECK(oracle::max_abs(kron(a, b) - oracle::kron(a, b)) == 0.0);
            CHECK(std::abs(trace(kron(a, b)) - oracle::trace(a) * oracle::trace(b)) <
                  1e-14);
        }
    }
    SUBCASE("rectangular shapes") {
        const ComplexMatrix a = ComplexMatrix::Ones(2, 3);
        const ComplexMatrix b = ComplexMatrix::Ones(4, 1);
        const ComplexMatrix k = kron(a, b);
        CHECK(k.rows() == 8);
        CHECK(k.cols() == 3);
    }
    SUBCASE("rejects non-finite entries") {
        ComplexMatrix a = identity(2);
        a(0, 1) = std::nan("");
        CHECK_THROWS_AS((void)kron(a, identity(2)), Error);
    }
}

TEST_CASE("partial_trace") {
    Rng rng(12);
    SUBCASE("product state identity") {
        const ComplexMatrix a = random_hermitian(2, rng);
        const ComplexMatrix b = random_hermitian(3, rng);
        const std::array<std::size_t, 2> dims{2, 3};
        const std::array<std::size_t, 1> keep{0};
        CHECK(frobenius_norm(partial_trace(kron(a, b), dims, keep) -
                             oracle::trace(b) * a) < 1e-12);
    }
    SUBCASE("tracing everything gives the trace") {
        const ComplexMatrix m = random_ginibre(6, 6, rng);
        const std::array<std::size_t, 2> dims{2, 3};
        const ComplexMatrix t = partial_trace(m, dims, {});
        REQUIRE(t.rows() == 1);
        CHECK(std::abs(t(0, 0) - oracle::trace(m)) < 1e-14);
    }
    SUBCASE("Bell state marginals are maximally mixed") {
        const std::array<std::size_t, 2> dims{2, 2};
        const ComplexMatrix half = 0.5 * identity(2);
        for (std::size_t k = 0; k < 2; ++k) {
            const std::array<std::size_t, 1> keep{k};
            CHECK(frobenius_norm(partial_trace(oracle::bell_density(), dims, keep) -
                                 half) == 0.0);
        }
    }
    SUBCASE("matches the index formula on random bipartite matrices") {
        for (int s = 0; s < 20; ++s) {
            const ComplexMatrix m = random_ginibre(12, 12, rng);
            const std::array<std::size_t, 2> dims{3, 4};
            const std::array<std::size_t, 1> first{0};
            const std::array<std::size_t, 1> second{1};
            CHECK(oracle::max_abs(partial_trace(m, dims, first) -
                                  oracle::reduce(m, 3, 4, true)) < 1e-13);
            CHECK(oracle::max_abs(partial_trace(m, dims, second) -
                                  oracle::reduce(m, 3, 4, false)) < 1e-13);
        }
    }
    SUBCASE("keeps factors in ascending order for three factors") {
        const ComplexMatrix a = random_hermitian(2, rng);
        const ComplexMatrix b = random_hermitian(3, rng);
        const ComplexMatrix c = random_hermitian(2, rng);
        const std::array<std::size_t, 3> dims{2, 3, 2};
        const std::array<std::size_t, 2> keep{2, 0};
        const ComplexMatrix expected = oracle::trace(b) * oracle::kron(a, c);
        CHECK(frobenius_norm(partial_trace(kron(kron(a, b), c), dims, keep) - expected) <
              1e-12);
    }
    SUBCASE("trace preserved over 100 seeded Hermitian samples") {
        for (int s = 0; s < 100; ++s) {
            const std::array<std::size_t, 3> dims{2, 3, 2};
            const ComplexMatrix h = random_hermitian(12, rng);
            const std::array<std::size_t, 1> keep{static_cast<std::size_t>(s % 3)};
            CHECK(std::abs(trace(partial_trace(h, dims, keep)) - oracle::trace(h)) <
                  1e-10);
        }
    }
    SUBCASE("errors") {
        const std::array<std::size_t, 2> dims{2, 2};
        const std::array<std::size_t, 1> keep{0};
        try {
            (void)partial_trace(identity(6), dims, keep);
            FAIL("expected an error");
        } catch (const Error &e) {
            CHECK(std::string(e.what()).find("factorization mismatch") !=
                  std::string::npos);
        }
        const std::array<std::size_t, 1> bad{2};
        CHECK_THROWS_AS((void)partial_trace(identity(4), dims, bad), Error);
    }
}

TEST_CASE("permute_factors") {
    Rng rng(13);
    const ComplexMatrix a = random_hermitian(2, rng);
    const ComplexMatrix b = random_hermitian(3, rng);
    const std::array<std::size_t, 2> dims{2, 3};
    const std::array<std::size_t, 2> swap{1, 0};
    CHECK(frobenius_norm(permute_factors(kron(a, b), dims, swap) - kron(b, a)) < 1e-14);
}

TEST_CASE("eig_hermitian") {
    SUBCASE("diagonal input") {
        const std::array<double, 2> d{2, 1};
        const EigenSystem e = eig_hermitian(diagonal(d));
        CHECK(e.values == std::vector<double>{1.0, 2.0});
        CHECK(std::abs(e.vectors(1, 0) - Complex(1.0)) < 1e-15);
        CHECK(std::abs(e.vectors(0, 1) - Complex(1.0)) < 1e-15);
    }
    SUBCASE("Pauli x") {
        const ComplexMatrix x = oracle::from_rows({{0, 1}, {1, 0}});
        const EigenSystem e = eig_hermitian(x);
        CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-15));
        const double r = 1.0 / std::sqrt(2.0);
        // First non-negligible component is real positive.
        CHECK(std::abs(e.vectors(0, 0) - Complex(r)) < 1e-15);
        CHECK(std::abs(e.vectors(1, 0) - Complex(-r)) < 1e-15);
        CHECK(std::abs(e.vectors(0, 1) - Complex(r)) < 1e-15);
        CHECK(std::abs(e.vectors(1, 1) - Complex(r)) < 1e-15);
    }
    SUBCASE("random 4x4 reconstructs and is orthonormal") {
        Rng rng(14);
        for (int s = 0; s < 100; ++s) {
            const ComplexMatrix h = random_hermitian(4, rng);
            const EigenSystem e = eig_hermitian(h);
            ComplexMatrix rebuilt = ComplexMatrix::Zero(4, 4);
            for (Eigen::Index k = 0; k < 4; ++k) {
                rebuilt += e.values[static_cast<std::size_t>(k)] *
                           oracle::outer(e.vectors.col(k), e.vectors.col(k));
            }
            CHECK(frobenius_norm(h - rebuilt) <= 1e-10 * std::max(1.0, frobenius_norm(h)));
            CHECK(frobenius_norm(oracle::matmul(dagger(e.vectors), e.vectors) -
                                 identity(4)) < 1e-10);
            CHECK(std::is_sorted(e.values.begin(), e.values.end()));
        }
    }
    SUBCASE("2x2 values agree with the closed form") {
        Rng rng(15);
        for (int s = 0; s < 50; ++s) {
            const ComplexMatrix h = random_hermitian(2, rng);
            const auto expected = oracle::eigenvalues_2x2(h);
            const EigenSystem e = eig_hermitian(h);
            CHECK(std::abs(e.values[0] - expected[0]) < 1e-12);
            CHECK(std::abs(e.values[1] - expected[1]) < 1e-12);
        }
    }
    SUBCASE("rejects non-Hermitian input") {
        const ComplexMatrix m = oracle::from_rows({{0, 1}, {0, 0}});
        try {
            (void)eig_hermitian(m);
            FAIL("expected an error");
        } catch (const Error &e) {
            CHECK(std::string(e.what()) == "not Hermitian");
        }
    }
}

TEST_CASE("range_basis") {
    SUBCASE("rank one projector") {
        const std::array<double, 3> d{1, 0, 0};
        const ComplexMatrix b = range_basis(diagonal(d));
        REQUIRE(b.cols() == 1);
        CHECK(std::abs(std::abs(b(0, 0)) - 1.0) < 1e-15);
    }
    SUBCASE("identity") {
        const ComplexMatrix b = range_basis(identity(4));
        CHECK(b.cols() == 4);
        CHECK(frobenius_norm(dagger(b) * b - identity(4)) < 1e-14);
    }
    SUBCASE("all-ones 2x2 has rank one along (1,1)") {
        const ComplexMatrix b = range_basis(oracle::from_rows({{1, 1}, {1, 1}}));
        REQUIRE(b.cols() == 1);
        // Row reduction gives the single pivot row (1, 1).
        CHECK(std::abs(std::abs(b(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(b(0, 0) - b(1, 0)) < 1e-15);
    }
    SUBCASE("zero matrix gives an empty basis") {
        CHECK(range_basis(ComplexMatrix::Zero(3, 3)).cols() == 0);
    }
}

TEST_CASE("tolerance validation") {
    Tolerance t;
    CHECK_NOTHROW(t.validate());
    t.eps_equality = 0.0;
    CHECK_THROWS_AS(t.validate(), Error);
    t.eps_equality = 2e-3;
    CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("dimension limit") {
    const std::array<std::size_t, 2> ok{64, 64};
    const std::array<std::size_t, 2> too_big{64, 65};
    CHECK(dimension_product(ok) == 4096);
    CHECK_THROWS_AS((void)dimension_product(too_big), Error);
}
