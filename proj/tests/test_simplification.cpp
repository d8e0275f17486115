#include "doctest.h"

#include <random>

#include "frechet/exact.hpp"
#include "frechet/simplification.hpp"
#include "support/test_utils.hpp"

using namespace frechet;

TEST_CASE("greedy scan marks the first vertex at distance >= mu") {
    Curve pi({Point{0, 0}, Point{0.4, 0}, Point{1, 0}, Point{1.2, 0}});
    const auto s = simplify(pi, 0.5);
    CHECK(s.marked == std::vector<std::size_t>{0, 2, 3});
    REQUIRE(s.curve.size() == 3);
    CHECK(s.curve.point(0) == Point{0, 0});
    CHECK(s.curve.point(1) == Point{1, 0});
    CHECK(s.curve.point(2) == Point{1.2, 0});
    // The short closing edge is permitted.
    CHECK(s.curve.edge_length(1) < 0.5);
}

TEST_CASE("mu below every edge keeps the whole curve") {
    Curve pi({Point{0, 0}, Point{1, 0}, Point{2, 1}});
    const auto s = simplify(pi, 1e-6);
    CHECK(s.curve == pi);
    CHECK(s.marked == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("single vertex and tie handling") {
    Curve one({Point{3, 4}});
    const auto s = simplify(one, 1.0);
    CHECK(s.curve.size() == 1);
    CHECK(s.marked == std::vector<std::size_t>{0});

    // A vertex at exactly mu counts as "at least mu away".
    Curve tie({Point{0, 0}, Point{1, 0}, Point{2, 0}});
    const auto st = simplify(tie, 1.0);
    CHECK(st.marked == std::vector<std::size_t>{0, 1, 2});

    CHECK_THROWS_AS(simplify(tie, 0.0), std::domain_error);
    CHECK_THROWS_AS(simplify(tie, -1.0), std::domain_error);
}

TEST_CASE("vertex coverage within mu") {
    testutil::Rng rng(11);
    std::uniform_real_distribution<double> umu(0.05, 3.0);
    for (int rep = 0; rep < 60; ++rep) {
        Curve pi = testutil::random_walk(2 + rep % 40, 1 + rep % 3, rng, 0.5);
        const double mu = umu(rng);
        const auto s = simplify(pi, mu);
        for (std::size_t v = 0; v < pi.size(); ++v) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < s.curve.size(); ++k) {
                best = std::min(best, distance(pi.vertex(v), s.curve.vertex(k)));
            }
            CHECK(best <= mu);
        }
    }
}

TEST_CASE("simplification stays within mu in Frechet distance") {
    testutil::Rng rng(12);
    std::uniform_real_distribution<double> umu(0.05, 4.0);
    for (int rep = 0; rep < 40; ++rep) {
        Curve pi = testutil::random_walk(2 + rep % 60, 1 + rep % 3, rng, 0.5);
        const double mu = umu(rng);
        const auto s = simplify(pi, mu);
        CHECK(exact_frechet(pi, s.curve) <= mu + 1e-9);
    }
}

TEST_CASE("all simplified edges except the last meet the width") {
    testutil::Rng rng(13);
    std::uniform_real_distribution<double> umu(0.05, 3.0);
    for (int rep = 0; rep < 60; ++rep) {
        Curve pi = testutil::random_walk(2 + rep % 50, 2, rng, 0.4);
        const double mu = umu(rng);
        const auto s = simplify(pi, mu);
        for (std::size_t e = 0; e + 2 < s.curve.size(); ++e) {
            CHECK(s.curve.edge_length(e) >= mu - 1e-9);
        }
        CHECK(s.marked.front() == 0);
        CHECK(s.marked.back() == pi.size() - 1);
    }
}

TEST_CASE("critical values of collinear points") {
    Curve pi({Point{0.0}, Point{1.0}, Point{3.0}});
    const auto vals = simplification_critical_values(pi);
    CHECK(vals == std::vector<double>{1.0, 2.0, 3.0});

    Curve one({Point{5.0}});
    CHECK(simplification_critical_values(one).empty());
}

TEST_CASE("marked set is constant between consecutive critical values") {
    testutil::Rng rng(14);
    for (int rep = 0; rep < 25; ++rep) {
        Curve pi = testutil::random_walk(2 + rep % 48, 1 + rep % 3, rng, 0.7);
        const auto vals = simplification_critical_values(pi);
        std::uniform_int_distribution<std::size_t> pick(0, vals.size() >= 2 ? vals.size() - 2 : 0);
        for (int probe = 0; probe < 6 && vals.size() >= 2; ++probe) {
            const std::size_t i = pick(rng);
            const double x = vals[i], xn = vals[i + 1];
            if (x <= 0.0) continue;
            const auto a = simplify(pi, x * (1.0 + 1e-12));
            const auto b = simplify(pi, 0.5 * (x + xn));
            CHECK(a.marked == b.marked);
        }
        // Crossing a critical value may change the marked set; verify the
        // scan output only flips at listed values by sampling around one.
        if (vals.size() >= 2) {
            const double v = vals[vals.size() / 2];
            if (v > 0.0) {
                const auto at = simplify(pi, v);
                const auto above = simplify(pi, v * (1.0 + 1e-12));
                // At the value itself ties mark; just above they may not.
                CHECK(at.marked.size() >= above.marked.size());
            }
        }
    }
}
