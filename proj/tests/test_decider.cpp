#include "doctest.h"

#include <cstdlib>
#include <random>

#include "frechet/decider.hpp"
#include "frechet/exact.hpp"
#include "frechet/proximity.hpp"
#include "frechet/simplification.hpp"
#include "support/test_utils.hpp"

using namespace frechet;

namespace {

struct Instance {
    Curve P;
    Curve Q;
};

Instance random_instance(testutil::Rng& rng, std::size_t max_n, double offset_scale) {
    const std::size_t dim = 1 + rng() % 3;
    const std::size_t n = 2 + rng() % (max_n - 1);
    const std::size_t m = 2 + rng() % (max_n - 1);
    Curve P = testutil::random_walk(n, dim, rng, 0.8);
    Point start = testutil::random_point(dim, rng, offset_scale);
    Curve Q = testutil::random_walk(m, dim, rng, 0.8, start);
    return {std::move(P), std::move(Q)};
}

}  // namespace

TEST_CASE("schedule derivation") {
    EpsilonSchedule s(0.3);
    CHECK(s.eps == 0.3);
    CHECK(s.eps_prime == doctest::Approx(0.01));
    CHECK(s.delta == doctest::Approx(0.005));
    CHECK_THROWS_AS(EpsilonSchedule(0.0), std::domain_error);
    CHECK_THROWS_AS(EpsilonSchedule(0.5), std::domain_error);
    CHECK_THROWS_AS(EpsilonSchedule(-0.1), std::domain_error);
}

TEST_CASE("candidate sets: empty interior layers when Q is far away") {
    Curve P({Point{0, 0}, Point{1, 0}, Point{2, 0}});
    Curve Q({Point{0, 500}, Point{1, 500}, Point{2, 500}});
    EpsilonSchedule sched(0.25);
    const double r = 0.5;
    auto K = simplify(P, sched.delta * r);
    auto index = build_index(K.curve, r);
    auto sets = build_candidate_sets(K, Q, r, sched, index);
    REQUIRE(sets.size() == 3);
    CHECK(sets[0].points.size() == 1);  // forced start
    CHECK(sets[1].points.empty());
    CHECK(sets[2].points.size() == 1);  // forced end
    CHECK(fuzzy_decide(P, Q, r, sched) == FuzzyOutcome::kGT);
}

TEST_CASE("candidate count on a diameter chord") {
    // A chord through the ball center has length 4r; with spacing delta*r
    // that yields 4/delta + 1 evenly spaced points.
    EpsilonSchedule sched(0.3);  // delta = 1/200
    const double r = 1.0;
    Curve P({Point{-10, 0}, Point{10, 0}});
    Curve Q({Point{-10, 0.5}, Point{0, 0}, Point{10, 0.5}});
    auto K = simplify(P, sched.delta * r);
    auto index = build_index(K.curve, r);
    auto sets = build_candidate_sets(K, Q, r, sched, index);
    REQUIRE(sets.size() == 3);
    CHECK(sets[1].points.size() == 801);  // ceil(4/delta) + 1
}

TEST_CASE("identical segments collapse to forced endpoints") {
    Curve P({Point{0, 0}, Point{1, 0}});
    EpsilonSchedule sched(0.25);
    auto K = simplify(P, sched.delta * 0.5);
    auto index = build_index(K.curve, 0.5);
    auto sets = build_candidate_sets(K, P, 0.5, sched, index);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].points.size() == 1);
    CHECK(sets[1].points.size() == 1);
    CHECK(point_at(K.curve, sets[0].points[0].pos) == Point{0, 0});
    CHECK(point_at(K.curve, sets[1].points[0].pos) == Point{1, 0});
}

TEST_CASE("candidate invariants: ball membership and spacing") {
    testutil::Rng rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        auto [P, Q] = random_instance(rng, 20, 2.0);
        EpsilonSchedule sched(0.1 + 0.1 * (rep % 4));
        const double r = 0.2 + 0.2 * (rep % 5);
        auto K = simplify(P, sched.delta * r);
        auto index = build_index(K.curve, r);
        auto sets = build_candidate_sets(K, Q, r, sched, index);
        for (std::size_t i = 1; i + 1 < sets.size(); ++i) {
            for (std::size_t j = 0; j < sets[i].points.size(); ++j) {
                const auto& cand = sets[i].points[j];
                CHECK(distance(cand.point.coords, Q.vertex(i)) <= 2.0 * r + 1e-9);
                if (j > 0 && sets[i].points[j - 1].pos.edge_index == cand.pos.edge_index) {
                    const double gap =
                        arc_length_between(K.curve, sets[i].points[j - 1].pos, cand.pos);
                    CHECK(gap <= sched.delta * r * (1.0 + 1e-9));
                }
            }
        }
    }
}

TEST_CASE("layer edges on identical segments") {
    Curve P({Point{0, 0}, Point{1, 0}});
    EpsilonSchedule sched(0.25);
    const double r = 0.1;
    auto K = simplify(P, sched.delta * r);
    auto index = build_index(K.curve, r);
    auto g = build_layer_edges(K, P, r, build_candidate_sets(K, P, r, sched, index));
    REQUIRE(g.edges.size() == 1);
    REQUIRE(g.edges[0].size() == 1);
    CHECK(g.edges[0][0] == std::pair<std::uint32_t, std::uint32_t>{0, 0});
    CHECK(layered_graph_has_path(g));
}

TEST_CASE("edges respect curve order") {
    testutil::Rng rng(42);
    for (int rep = 0; rep < 15; ++rep) {
        auto [P, Q] = random_instance(rng, 10, 1.0);
        EpsilonSchedule sched(0.25);
        const double r = 0.3 + 0.3 * (rep % 4);
        auto K = simplify(P, sched.delta * r);
        auto index = build_index(K.curve, r);
        auto g = build_layer_edges(K, Q, r, build_candidate_sets(K, Q, r, sched, index));
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            for (auto [a, b] : g.edges[i]) {
                const auto wa = normalize(K.curve, g.layers[i].points[a].pos);
                const auto wb = normalize(K.curve, g.layers[i + 1].points[b].pos);
                CHECK(!(wb < wa));
            }
        }
    }
}

TEST_CASE("edge set equals direct recomputation") {
    testutil::Rng rng(43);
    for (int rep = 0; rep < 10; ++rep) {
        auto [P, Q] = random_instance(rng, 8, 0.8);
        EpsilonSchedule sched(0.3);
        const double r = 0.4 + 0.2 * (rep % 3);
        auto K = simplify(P, sched.delta * r);
        auto index = build_index(K.curve, r);
        auto layers = build_candidate_sets(K, Q, r, sched, index);
        auto g = build_layer_edges(K, Q, r, layers);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            std::size_t count = 0;
            Segment qseg(Q.point(i), Q.point(i + 1));
            for (std::uint32_t a = 0; a < layers[i].points.size(); ++a) {
                for (std::uint32_t b = 0; b < layers[i + 1].points.size(); ++b) {
                    const auto wa = normalize(K.curve, layers[i].points[a].pos);
                    const auto wb = normalize(K.curve, layers[i + 1].points[b].pos);
                    if (wb < wa) continue;
                    const double c = exact_frechet(
                        subcurve(K.curve, layers[i].points[a].pos, layers[i + 1].points[b].pos),
                        Curve({qseg.start, qseg.end}));
                    if (c <= r + 1e-9) ++count;
                }
            }
            CHECK(count == g.edges[i].size());
        }
    }
}

TEST_CASE("fuzzy decision basics") {
    testutil::Rng rng(44);
    EpsilonSchedule sched(0.25);
    for (int rep = 0; rep < 10; ++rep) {
        Curve P = testutil::random_walk(2 + rep, 2, rng);
        CHECK(fuzzy_decide(P, P, 0.1 + rep * 0.3, sched) == FuzzyOutcome::kLE);
    }
    Curve P({Point{0, 0}, Point{1, 0}});
    Curve Q({Point{0, 300}, Point{1, 300}});
    CHECK(fuzzy_decide(P, Q, 1.0, sched) == FuzzyOutcome::kGT);
    CHECK_THROWS_AS(fuzzy_decide(P, Q, 0.0, sched), std::domain_error);
}

TEST_CASE("fuzzy decision is sound against the oracle") {
    testutil::Rng rng(45);
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    const double epses[] = {0.1, 0.25, 0.49};
    for (int rep = 0; rep < 60; ++rep) {
        auto [P, Q] = random_instance(rng, 14, 1.5);
        EpsilonSchedule sched(epses[rep % 3]);
        const double truth = exact_frechet(P, Q);
        const double r = std::max(1e-3, truth * std::pow(4.0, uu(rng)));
        const auto out = fuzzy_decide(P, Q, r, sched);
        if (out == FuzzyOutcome::kLE) {
            CHECK(truth <= (1.0 + sched.eps_prime / 2.0) * r * (1.0 + 1e-9) + 1e-9);
        } else {
            CHECK(truth > (1.0 - 2.0 * sched.eps_prime) * r * (1.0 - 1e-9) - 1e-9);
        }
    }
}

TEST_CASE("sweep reachability agrees with the materialized graph") {
    testutil::Rng rng(46);
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        auto [P, Q] = random_instance(rng, 10, 1.0);
        EpsilonSchedule sched(0.25 + 0.05 * (rep % 4));
        const double truth = exact_frechet(P, Q);
        const double r = std::max(1e-3, truth * std::pow(3.0, uu(rng)));
        auto K = simplify(P, sched.delta * r);
        auto index = build_index(K.curve, r);
        const bool graph_path = layered_graph_has_path(
            build_layer_edges(K, Q, r, build_candidate_sets(K, Q, r, sched, index)));
        const auto sweep = fuzzy_decide(P, Q, r, sched);
        CHECK((sweep == FuzzyOutcome::kLE) == graph_path);
    }
}

TEST_CASE("complete decision examples") {
    EpsilonSchedule sched(0.25);
    Curve P({Point{0, 0}, Point{1, 0}});
    Curve Q({Point{0, 1}, Point{1, 1}});  // distance exactly 1

    CHECK(complete_decide(P, Q, 0.01, sched).kind == DecisionKind::kGT);
    CHECK(complete_decide(P, P, 1.0, sched).kind == DecisionKind::kLE);

    const auto near = complete_decide(P, Q, 1.0 + 1e-6, sched);
    CHECK(near.kind != DecisionKind::kGT);
    if (near.kind == DecisionKind::kApprox) {
        CHECK(near.value < 1.0);
        CHECK(1.0 <= (1.0 + sched.eps) * near.value);
    }
}

TEST_CASE("complete decision trichotomy against the oracle") {
    testutil::Rng rng(47);
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    const double epses[] = {0.1, 0.25, 0.49};
    for (int rep = 0; rep < 50; ++rep) {
        auto [P, Q] = random_instance(rng, 12, 1.5);
        EpsilonSchedule sched(epses[rep % 3]);
        const double truth = exact_frechet(P, Q);
        const double r = std::max(1e-3, truth * std::pow(4.0, uu(rng)));
        const auto out = complete_decide(P, Q, r, sched);
        switch (out.kind) {
            case DecisionKind::kLE:
                CHECK(truth <= r * (1.0 + 1e-9) + 2e-9);
                break;
            case DecisionKind::kGT:
                CHECK(truth > r * (1.0 - 1e-9) - 2e-9);
                break;
            case DecisionKind::kApprox:
                CHECK(out.value < truth * (1.0 + 1e-9) + 2e-9);
                CHECK(truth <= (1.0 + sched.eps) * out.value * (1.0 + 1e-9) + 2e-9);
                break;
        }
    }
}

TEST_CASE("degenerate point curves decide directly") {
    EpsilonSchedule sched(0.25);
    Curve p({Point{0, 0}});
    Curve c({Point{0, 1}, Point{4, 1}});
    const double d = std::hypot(4.0, 1.0);
    CHECK(fuzzy_decide(p, c, d + 0.01, sched) == FuzzyOutcome::kLE);
    CHECK(fuzzy_decide(p, c, d - 0.01, sched) == FuzzyOutcome::kGT);
    CHECK(complete_decide(c, p, d * 1.5, sched).kind == DecisionKind::kLE);
}

TEST_CASE("fuzzy witness leash stays within the claimed radius") {
    testutil::Rng rng(48);
    for (int rep = 0; rep < 30; ++rep) {
        auto [P, Q] = random_instance(rng, 14, 0.8);
        EpsilonSchedule sched(0.25);
        const double truth = exact_frechet(P, Q);
        const double r = std::max(1e-3, truth * 1.3);
        auto detail = fuzzy_decide_detail(P, Q, r, sched, true, nullptr);
        if (detail.outcome != FuzzyOutcome::kLE) continue;
        REQUIRE(!detail.witness.empty());
        CHECK(alignment_leash(P, Q, detail.witness) <=
              (1.0 + sched.delta) * r + 2e-9);
        // Alignment endpoints pin the curve endpoints and stay monotone.
        CHECK(detail.witness.front().on_p == normalize(P, CurvePosition{1, 0.0}));
        CHECK(detail.witness.back().on_q.edge_index == static_cast<int>(Q.edge_count()));
        for (std::size_t i = 1; i < detail.witness.size(); ++i) {
            CHECK(!(normalize(P, detail.witness[i].on_p) <
                    normalize(P, detail.witness[i - 1].on_p)));
            CHECK(!(normalize(Q, detail.witness[i].on_q) <
                    normalize(Q, detail.witness[i - 1].on_q)));
        }
    }
}

TEST_CASE("thread cap does not change results") {
    testutil::Rng rng(49);
    auto [P, Q] = random_instance(rng, 16, 0.6);
    EpsilonSchedule sched(0.25);
    const double r = 1.0;
    auto K = simplify(P, sched.delta * r);
    auto index = build_index(K.curve, r);

    setenv("FRECHET_THREADS", "1", 1);
    auto sets1 = build_candidate_sets(K, Q, r, sched, index);
    auto g1 = build_layer_edges(K, Q, r, sets1);
    setenv("FRECHET_THREADS", "4", 1);
    auto sets4 = build_candidate_sets(K, Q, r, sched, index);
    auto g4 = build_layer_edges(K, Q, r, sets4);
    unsetenv("FRECHET_THREADS");

    REQUIRE(sets1.size() == sets4.size());
    for (std::size_t i = 0; i < sets1.size(); ++i) {
        REQUIRE(sets1[i].points.size() == sets4[i].points.size());
        for (std::size_t j = 0; j < sets1[i].points.size(); ++j) {
            CHECK(sets1[i].points[j].pos == sets4[i].points[j].pos);
        }
    }
    CHECK(g1.edges == g4.edges);
}
