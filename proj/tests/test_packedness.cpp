#include "doctest.h"

#include <random>

#include "frechet/packedness.hpp"
#include "frechet/simplification.hpp"
#include "support/test_utils.hpp"

using namespace frechet;

namespace {

// Straight brute force over a family: max length-in-ball over radius.
double brute_force_family_max(const Curve& pi, const BallFamily& family) {
    double best = 0.0;
    for (const Point& c : family.centers) {
        for (double r : family.radii) {
            best = std::max(best, curve_length_in_ball(pi, c, r) / r);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("a single segment packs at most two") {
    Curve seg({Point{0, 0}, Point{10, 0}});
    const auto est = sampled_packedness(seg);
    CHECK(est.value <= 2.0 + 1e-9);
    CHECK(est.value > 0.5);
}

TEST_CASE("star of five unit spokes concentrates length at the hub") {
    std::vector<Point> verts;
    verts.push_back(Point{1, 0});
    for (int k = 1; k <= 5; ++k) {
        const double ang = 2.0 * 3.14159265358979323846 * k / 5.0;
        verts.push_back(Point{0, 0});
        verts.push_back(Point{std::cos(ang), std::sin(ang)});
    }
    Curve star(std::move(verts));
    const auto est = sampled_packedness(star);
    CHECK(est.value >= 5.0);
}

TEST_CASE("balls far from the curve contribute nothing") {
    Curve seg({Point{0, 0}, Point{1, 0}});
    CHECK(curve_length_in_ball(seg, Point{100, 100}, 1.0) == 0.0);
    CHECK(curve_length_in_ball(seg, Point{0.5, 0}, 0.25) == doctest::Approx(0.5));
}

TEST_CASE("estimator equals brute force over its own family") {
    testutil::Rng rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        Curve pi = testutil::random_walk(2 + rep % 14, 1 + rep % 3, rng);
        const auto est = sampled_packedness(pi);
        const double brute = brute_force_family_max(pi, est.family);
        CHECK(est.value == doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("estimate is invariant under rigid motion and scale") {
    testutil::Rng rng(22);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t dim = 2 + rep % 2;
        Curve pi = testutil::random_walk(4 + rep % 12, dim, rng);
        const auto base = sampled_packedness(pi);

        auto motion = testutil::random_rigid_motion(dim, rng);
        const auto moved = sampled_packedness(motion.apply(pi));
        CHECK(moved.value == doctest::Approx(base.value).epsilon(1e-7));

        // Uniform scaling leaves length/r ratios unchanged.
        std::vector<Point> scaled;
        for (std::size_t i = 0; i < pi.size(); ++i) {
            Point p = pi.point(i);
            for (std::size_t k = 0; k < dim; ++k) p[k] *= 3.7;
            scaled.push_back(p);
        }
        const auto s = sampled_packedness(Curve(std::move(scaled)));
        CHECK(s.value == doctest::Approx(base.value).epsilon(1e-7));
    }
}

TEST_CASE("generator is deterministic in the seed") {
    const Curve a = generate_c_packed_curve(100, 8.0, 2, 7);
    const Curve b = generate_c_packed_curve(100, 8.0, 2, 7);
    CHECK(a == b);
    const Curve c = generate_c_packed_curve(100, 8.0, 2, 8);
    CHECK(!(a == c));
}

TEST_CASE("two-vertex generation yields a single segment") {
    const Curve c = generate_c_packed_curve(2, 2.0, 3, 5);
    CHECK(c.size() == 2);
    CHECK(sampled_packedness(c).value <= 2.0 + 1e-9);
}

TEST_CASE("generator rejects infeasible parameters") {
    CHECK_THROWS_AS(generate_c_packed_curve(1, 4.0, 2, 1), std::domain_error);
    CHECK_THROWS_AS(generate_c_packed_curve(10, 1.5, 2, 1), std::domain_error);
    CHECK_THROWS_AS(generate_c_packed_curve(10, 4.0, 0, 1), std::domain_error);
}

TEST_CASE("generated curves respect the packedness target across seeds") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Curve c = generate_c_packed_curve(1000, 10.0, 2, seed);
        const auto est = sampled_packedness(c);
        CHECK(est.value <= 10.0);
    }
}

TEST_CASE("generated curves in several dimensions and targets") {
    testutil::Rng rng(23);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t dim = 1 + rep % 3;
        const double target = rep % 2 == 0 ? 4.0 : 10.0;
        const Curve c = generate_c_packed_curve(60 + rep, target, dim, 100 + rep);
        CHECK(sampled_packedness(c).value <= target);
    }
}

TEST_CASE("simplification inflates sampled packedness by at most six") {
    testutil::Rng rng(24);
    std::uniform_real_distribution<double> umu(0.1, 2.0);
    for (int rep = 0; rep < 15; ++rep) {
        const Curve pi = generate_c_packed_curve(40 + rep * 3, 6.0, 2, 300 + rep);
        const auto base = sampled_packedness(pi);
        const auto simp = simplify(pi, umu(rng));
        if (simp.curve.edge_count() < 1) continue;
        const auto after = sampled_packedness(simp.curve);
        CHECK(after.value <= 6.0 * base.value + 1e-6);
    }
}
