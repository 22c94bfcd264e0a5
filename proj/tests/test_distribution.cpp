#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "agg/distribution.hpp"
#include "helpers.hpp"

using namespace agg;

TEST_CASE("bayes rule sign convention") {
    CHECK(FiniteDistribution({1.0}, {1.0}).bayes_rule()(0) == 1.0);
    const FiniteDistribution d({0.5, 0.5}, {0.25, 0.75});
    CHECK(d.bayes_rule()(0) == -1.0);
    CHECK(d.bayes_rule()(1) == 1.0);
    // tie-break: sign(0) = +1
    CHECK(FiniteDistribution({1.0}, {0.5}).bayes_rule()(0) == 1.0);
}

TEST_CASE("zero-one risk") {
    const FiniteDistribution d({0.5, 0.5}, {0.25, 0.75});
    CHECK(d.zero_one_risk(d.bayes_rule()) == doctest::Approx(0.25).epsilon(1e-15));
    const Rule flipped({1.0, -1.0});
    CHECK(d.zero_one_risk(flipped) == doctest::Approx(0.75).epsilon(1e-15));
    const FiniteDistribution det({1.0}, {1.0});
    CHECK(det.zero_one_risk(Rule::constant(1.0, 1)) == 0.0);
    CHECK_THROWS_AS(d.zero_one_risk(Rule::constant(1.0, 1)), std::domain_error);
}

TEST_CASE("bayes risk") {
    CHECK(FiniteDistribution({1.0}, {1.0}).bayes_risk() == 0.0);
    const FiniteDistribution d({0.5, 0.5}, {0.25, 0.75});
    CHECK(d.bayes_risk() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d.bayes_risk() == d.zero_one_risk(d.bayes_rule()));
    // cube-shaped instance: N=3, w=0.1, h=0.5
    const FiniteDistribution cube({0.1, 0.1, 0.8}, {0.75, 0.25, 1.0});
    CHECK(cube.bayes_risk() == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("hinge risk") {
    const FiniteDistribution d({0.5, 0.5}, {0.25, 0.75});
    CHECK(d.hinge_risk(d.bayes_rule()) ==
          doctest::Approx(2.0 * d.bayes_risk()).epsilon(1e-15));
    CHECK(d.hinge_risk(Rule::constant(0.0, 2)) == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 gen(7);
    for (int i = 0; i < 200; ++i) {
        const auto dist = aggtest::random_distribution(gen);
        const auto f = aggtest::random_prediction_rule(gen, dist.n_atoms());
        CHECK(dist.hinge_risk(f) ==
              doctest::Approx(2.0 * dist.zero_one_risk(f)).epsilon(1e-12));
    }
}

TEST_CASE("excess hinge identity") {
    const FiniteDistribution d1({1.0}, {0.75});
    CHECK(d1.excess_hinge(d1.bayes_rule()) == 0.0);
    CHECK(d1.excess_hinge(Rule::constant(-1.0, 1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d1.excess_hinge(Rule::constant(0.0, 1)) == doctest::Approx(0.5).epsilon(1e-15));

    std::mt19937_64 gen(11);
    for (int i = 0; i < 1000; ++i) {
        const auto dist = aggtest::random_distribution(gen);
        const auto f = aggtest::random_rule(gen, dist.n_atoms());
        const double excess = dist.excess_hinge(f);  // throws if forms disagree
        CHECK(excess >= -1e-12);
        // argmin property and the zero-one/hinge comparison
        CHECK(dist.zero_one_risk(f) >= dist.bayes_risk() - 1e-15);
        CHECK(dist.zero_one_risk(f) - dist.bayes_risk() <= excess + 1e-12);
    }
}

TEST_CASE("margin constant") {
    const FiniteDistribution det({1.0}, {1.0});
    const MarginCheck mc1 = det.margin_constant(1.0);
    CHECK(mc1.satisfiable);
    CHECK(mc1.constant == 1.0);

    const FiniteDistribution noisy({0.5, 0.5}, {0.5, 1.0});
    CHECK_FALSE(noisy.margin_constant(1.0).satisfiable);
    CHECK_FALSE(noisy.margin_constant(2.0).satisfiable);
    CHECK_THROWS_AS(det.margin_constant(0.5), std::invalid_argument);

    // cube-shaped: P(|2 eta - 1| <= t) = (N-1) w 1{h <= t}
    const double w = 0.02, h = 0.5, kappa = 2.0;
    const FiniteDistribution cube({w, w, w, 1.0 - 3.0 * w}, {0.75, 0.25, 0.75, 1.0});
    const MarginCheck mc = cube.margin_constant(kappa);
    CHECK(mc.satisfiable);
    CHECK(mc.constant ==
          doctest::Approx(3.0 * w / std::pow(h, 1.0 / (kappa - 1.0))).epsilon(1e-12));
    CHECK(mc.constant <= 1.0);
}

TEST_CASE("margin monotone in kappa") {
    std::mt19937_64 gen(13);
    for (int i = 0; i < 100; ++i) {
        const auto dist = aggtest::random_distribution(gen, 6, 0.0, 1.0);
        const MarginCheck a = dist.margin_constant(1.5);
        const MarginCheck b = dist.margin_constant(3.0);
        if (a.satisfiable) CHECK(b.satisfiable);
    }
}

TEST_CASE("variance bound under the margin assumption") {
    std::mt19937_64 gen(17);
    for (int i = 0; i < 300; ++i) {
        // keep eta away from 1/2 so kappa = 1 is satisfiable
        auto dist = aggtest::random_distribution(gen, 5, 0.0, 0.35);
        const auto f = aggtest::random_rule(gen, dist.n_atoms());
        const double v = dist.relative_variance(f);
        const double excess = dist.excess_hinge(f);
        const double c1 = 2.0 * dist.mah_constant(1.0);
        CHECK(v <= c1 * excess + 1e-12);
        const double c2 = 2.0 * dist.mah_constant(2.0);
        CHECK(v <= c2 * std::sqrt(excess) + 1e-12);
    }
}

TEST_CASE("sampling") {
    const FiniteDistribution det({1.0}, {1.0});
    const LabeledSample s = det.sample(5, 42);
    REQUIRE(s.size() == 5);
    for (const auto& e : s.entries) {
        CHECK(e.atom == 0);
        CHECK(e.label == 1);
    }

    const FiniteDistribution d({0.2, 0.3, 0.5}, {0.1, 0.5, 0.9});
    const LabeledSample a = d.sample(1000, 99);
    const LabeledSample b = d.sample(1000, 99);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.entries[i].atom == b.entries[i].atom);
        CHECK(a.entries[i].label == b.entries[i].label);
    }

    // chi-square goodness of fit at n = 1e5; threshold is the 0.999
    // quantile for 2 degrees of freedom
    const std::size_t n = 100000;
    const LabeledSample big = d.sample(n, 2024);
    std::vector<double> counts(3, 0.0);
    for (const auto& e : big.entries) counts[e.atom] += 1.0;
    double chi2 = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        const double expected = d.mass(j) * static_cast<double>(n);
        chi2 += (counts[j] - expected) * (counts[j] - expected) / expected;
    }
    CHECK(chi2 < 13.816);
}

TEST_CASE("hellinger distance") {
    const FiniteDistribution d({0.1, 0.9}, {0.75, 1.0});
    CHECK(hellinger_sq(d, d) == 0.0);

    // cube pair at Hamming distance 1, w = 0.1, h = 0.5
    const FiniteDistribution p1({0.1, 0.1, 0.8}, {0.75, 0.75, 1.0});
    const FiniteDistribution p2({0.1, 0.1, 0.8}, {0.75, 0.25, 1.0});
    CHECK(hellinger_sq(p1, p2) ==
          doctest::Approx(0.026794919243112281).epsilon(1e-12));

    const FiniteDistribution other({0.5, 0.5}, {0.75, 1.0});
    CHECK_THROWS_AS(hellinger_sq(d, other), std::invalid_argument);
    const FiniteDistribution other_mass({0.2, 0.8}, {0.75, 1.0});
    CHECK_THROWS_AS(hellinger_sq(d, other_mass), std::invalid_argument);

    // product lift: 1 - H_n^2/2 = (1 - H^2/2)^n
    const double h2 = hellinger_sq(p1, p2);
    CHECK(hellinger_sq_product(h2, 1) == doctest::Approx(h2).epsilon(1e-15));
    for (std::size_t n : {2, 5, 20}) {
        const double lhs = 1.0 - hellinger_sq_product(h2, n) / 2.0;
        CHECK(lhs == doctest::Approx(std::pow(1.0 - h2 / 2.0, double(n))).epsilon(1e-14));
    }
}

TEST_CASE("distribution invariants rejected") {
    CHECK_THROWS_AS(FiniteDistribution({0.5, 0.6}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteDistribution({0.5, 0.5}, {1.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteDistribution({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteDistribution({1.0}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Rule({1.5}), std::invalid_argument);
}
