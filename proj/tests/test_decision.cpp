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
#include "qdt/decision.hpp"
#include "qdt/error.hpp"
#include "qdt/random.hpp"

using namespace qdt;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

ProspectLattice two_labels() { return ProspectLattice({"pi1", "pi2"}); }

ProspectLattice quantum_lattice(const ComplexVector &b, std::size_t da = 2) {
    std::vector<Prospect> prospects;
    std::vector<std::string> labels;
    for (std::size_t n = 0; n < da; ++n) {
        prospects.emplace_back(HilbertSpace(da), n,
                               InconclusiveEvent(HilbertSpace(static_cast<std::size_t>(b.size())),
                                                 b));
        labels.push_back("pi" + std::to_string(n + 1));
    }
    return ProspectLattice(labels, prospects);
}

AttractionSpec prior(std::vector<int> signs, double mu = 0.0, double mu_c = 1.0) {
    AttractionSpec a;
    a.mode = AttractionMode::quarter_law_prior;
    a.signs = std::move(signs);
    a.mu = mu;
    a.mu_c = mu_c;
    return a;
}

UtilitySpec factors(std::vector<double> f) {
    return UtilitySpec{UtilityMode::direct_factors, std::move(f)};
}

} // namespace

TEST_CASE("utility_factors") {
    const auto from = [](UtilityMode mode, std::vector<double> v) {
        return utility_factors(UtilitySpec{mode, std::move(v)});
    };
    const auto u = from(UtilityMode::nonnegative_utilities, {3, 1});
    CHECK(u[0] == doctest::Approx(0.75));
    CHECK(u[1] == doctest::Approx(0.25));
    const auto z = from(UtilityMode::nonnegative_utilities, {0, 0, 2});
    CHECK(z == std::vector<double>{0, 0, 1});
    CHECK(from(UtilityMode::direct_factors, {0.6, 0.4}) == std::vector<double>{0.6, 0.4});
    try {
        (void)from(UtilityMode::direct_factors, {0.5, 0.4});
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(std::string(e.what()) == "utility factors must sum to 1");
    }
    CHECK_THROWS_AS((void)from(UtilityMode::nonnegative_utilities, {0, 0}), Error);
    CHECK_THROWS_AS((void)from(UtilityMode::nonnegative_utilities, {-1, 2}), Error);
    CHECK_THROWS_AS((void)from(UtilityMode::direct_factors, {1.2, -0.2}), Error);
}

TEST_CASE("attraction_prior") {
    const std::array<int, 2> pm{-1, 1};
    const auto two = attraction_prior(2, pm);
    CHECK(two == std::vector<double>{-0.25, 0.25});

    const std::array<int, 3> pmm{1, -1, -1};
    const auto three = attraction_prior(3, pmm);
    CHECK(three[0] == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(three[1] == doctest::Approx(-0.1875).epsilon(1e-15));
    CHECK(three[2] == doctest::Approx(-0.1875).epsilon(1e-15));

    Rng rng(61);
    for (int s = 0; s < 100; ++s) {
        const std::size_t n = 2 + static_cast<std::size_t>(s) % 7;
        std::vector<int> signs(n);
        std::bernoulli_distribution coin(0.5);
        for (int &v : signs) {
            v = coin(rng) ? 1 : -1;
        }
        signs[0] = 1;
        signs[1] = -1;
        const auto q = attraction_prior(n, signs);
        double sum = 0.0;
        double mean = 0.0;
        for (double v : q) {
            sum += v;
            mean += std::abs(v);
        }
        CHECK(std::abs(sum) <= 1e-14);
        CHECK(std::abs(mean / static_cast<double>(n) - 0.25) <= 1e-15);
    }

    const std::array<int, 3> same{1, 1, 1};
    try {
        (void)attraction_prior(3, same);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(std::string(e.what()) == "alternation law unsatisfiable");
    }
    const std::array<int, 2> zero{0, 1};
    CHECK_THROWS_AS((void)attraction_prior(2, zero), Error);
}

TEST_CASE("decay_attraction") {
    const std::array<double, 2> q{-0.25, 0.25};
    CHECK(decay_attraction(q, 0.0, 1.0) == std::vector<double>{-0.25, 0.25});
    const auto d = decay_attraction(q, 1.0, 1.0);
    CHECK(d[1] == doctest::Approx(0.25 / std::exp(1.0)).epsilon(1e-15));
    const auto l5 = decay_attraction(q, std::log(5.0), 1.0);
    CHECK(l5[1] == doctest::Approx(0.05).epsilon(1e-14));
    CHECK_THROWS_AS((void)decay_attraction(q, -1.0, 1.0), Error);
    CHECK_THROWS_AS((void)decay_attraction(q, 1.0, 0.0), Error);
}

TEST_CASE("predict") {
    SUBCASE("prisoner dilemma") {
        const Scenario sc = prisoner_dilemma_scenario();
        const PredictionReport r = predict(sc.lattice, sc.utility, sc.attraction);
        REQUIRE(r.rows.size() == 2);
        CHECK(std::abs(r.rows[0].probability - 0.35) <= 1e-12);
        CHECK(std::abs(r.rows[1].probability - 0.65) <= 1e-12);
        CHECK(r.rows[0].rank_by_utility == 1);
        CHECK(r.rows[0].rank_by_probability == 2);
        const EmpiricalComparison e = compare_to_empirical(r, sc.empirical);
        CHECK(std::abs(e.max_deviation - 0.02) <= 1e-12);
        const PairClassification c = classify_pair(r, 0, 1);
        CHECK(c.useful == Order::more);
        CHECK(c.attractive == Order::less);
        CHECK(c.preferable == Order::less);
    }
    SUBCASE("information reduces the attraction") {
        const PredictionReport r =
            predict(two_labels(), factors({0.6, 0.4}), prior({-1, 1}, std::log(5.0)));
        CHECK(std::abs(r.rows[0].probability - 0.55) <= 1e-12);
        CHECK(std::abs(r.rows[1].probability - 0.45) <= 1e-12);
        CHECK(r.decay_factor == doctest::Approx(0.2).epsilon(1e-14));
    }
    SUBCASE("lattice normalization on random inputs") {
        Rng rng(62);
        // Utilities stay above 0.13 and the decayed prior below 0.05, so no
        // prospect leaves [0, 1].
        std::uniform_real_distribution<double> u(0.3, 1.0);
        std::uniform_real_distribution<double> info(2.0, 4.0);
        for (int s = 0; s < 100; ++s) {
            std::vector<double> util(3);
            for (double &v : util) {
                v = u(rng);
            }
            ProspectLattice lattice({"a", "b", "c"});
            const PredictionReport r =
                predict(lattice, UtilitySpec{UtilityMode::nonnegative_utilities, util},
                        prior({1, -1, s % 2 ? 1 : -1}, info(rng)));
            double total = 0.0;
            for (const PredictionRow &row : r.rows) {
                total += row.probability;
                CHECK(row.probability == row.utility + row.attraction);
            }
            CHECK(std::abs(total - 1.0) <= 1e-12);
            CHECK(r.normalization_defect <= 1e-12);
        }
    }
    SUBCASE("explicit attraction") {
        AttractionSpec a;
        a.mode = AttractionMode::explicit_values;
        a.signs = {1, -1};
        a.magnitudes = {0.1, 0.1};
        const PredictionReport r = predict(two_labels(), factors({0.5, 0.5}), a);
        CHECK(r.rows[0].probability == doctest::Approx(0.6));
    }
    SUBCASE("mismatched sizes") {
        CHECK_THROWS_AS(
            (void)predict(two_labels(), factors({0.2, 0.3, 0.5}), prior({1, -1, 1})), Error);
    }
}

TEST_CASE("quantum attraction") {
    SUBCASE("|0> (x) |+>") {
        const ProspectLattice lattice = quantum_lattice(oracle::vec({r2, r2}));
        const DensityOperator rho(HilbertSpace(4), oracle::zero_plus_density());
        const LatticeEvaluation e = evaluate_lattice(rho, lattice);
        CHECK(e.raw[0].attraction_factor == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(e.raw[1].attraction_factor == 0.0);
        CHECK(e.raw_total == doctest::Approx(1.0).epsilon(1e-15));
        const auto q = attraction_from_state(rho, lattice);
        CHECK(std::abs(q[0]) <= 1e-15);
        CHECK(std::abs(q[1]) <= 1e-15);
        CHECK(e.alternation_defect <= 1e-15);
        CHECK(e.unity_defect > 0.1);
    }
    SUBCASE("normalized lattice on random states") {
        Rng rng(63);
        for (int s = 0; s < 100; ++s) {
            const std::size_t da = 2 + static_cast<std::size_t>(s) % 3;
            const std::size_t db = 2 + static_cast<std::size_t>(s / 3) % 2;
            const ProspectLattice lattice =
                quantum_lattice(random_state(db, rng).amplitudes(), da);
            const DensityOperator rho = random_density(da * db, rng);
            const LatticeEvaluation e = evaluate_lattice(rho, lattice);
            double sp = 0.0;
            double sf = 0.0;
            double sq = 0.0;
            for (std::size_t n = 0; n < da; ++n) {
                const oracle::Decomposition o =
                    oracle::prospect(rho.matrix(), da, n,
                                     lattice.prospects()[n].uncertain().amplitudes());
                CHECK(std::abs(e.raw[n].total - o.p) <= 1e-13);
                sp += e.normalized[n].total;
                sf += e.normalized[n].utility_factor;
                sq += e.normalized[n].attraction_factor;
            }
            CHECK(std::abs(sp - 1.0) <= 1e-12);
            CHECK(std::abs(sf - 1.0) <= 1e-12);
            CHECK(std::abs(sq) <= 1e-12);
        }
    }
}

TEST_CASE("preference_reversal_threshold") {
    const std::array<double, 2> f{0.6, 0.4};
    const std::array<double, 2> q{-0.25, 0.25};
    const auto mu = preference_reversal_threshold(f, q, 1.0);
    REQUIRE(mu.has_value());
    CHECK(*mu == doctest::Approx(std::log(2.5)).epsilon(1e-14));
    const double oracle_mu = oracle::bisect(
        [&](double m) {
            const double w = std::exp(-m);
            return (f[0] + q[0] * w) - (f[1] + q[1] * w);
        },
        0.0, 10.0);
    CHECK(std::abs(*mu - oracle_mu) <= 1e-9);

    const std::array<double, 2> scaled = {-0.25, 0.25};
    const auto mu2 = preference_reversal_threshold(f, scaled, 2.0);
    REQUIRE(mu2.has_value());
    CHECK(*mu2 == doctest::Approx(2.0 * std::log(2.5)).epsilon(1e-14));

    const std::array<double, 2> equal{0.5, 0.5};
    CHECK_FALSE(preference_reversal_threshold(equal, q, 1.0).has_value());
    const std::array<double, 2> aligned{0.25, -0.25};
    CHECK_FALSE(preference_reversal_threshold(f, aligned, 1.0).has_value());
}
