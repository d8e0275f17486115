#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

/// The ball family a packedness estimate was sampled over: centers crossed
/// with radii, plus a note describing how the family was derived.
struct BallFamily {
    std::vector<Point> centers;
    std::vector<double> radii;
    std::string note;
};

/// A sampled lower bound on the packedness constant c of a curve: the max of
/// length(curve intersect B(p, r)) / r over the sampled family.
struct PackednessEstimate {
    double value = 0.0;
    BallFamily family;
};

struct PackednessOptions {
    /// Soft cap on |centers| * |radii|; above it the radius family is
    /// subsampled from a vertex subset (the estimate stays a lower bound).
    std::size_t budget = 4'000'000;
};

/// Max over the family of length(pi ∩ B(center, radius)) / radius. Centers
/// are all vertices and edge midpoints; radii are pairwise vertex distances
/// and halves thereof, exact per-ball clipping.
PackednessEstimate sampled_packedness(const Curve& pi, const PackednessOptions& opts = {});

/// Total arc length of pi inside the closed ball B(center, radius).
double curve_length_in_ball(const Curve& pi, const Point& center, double radius);

/// Deterministic n-vertex curve whose sampled packedness stays below
/// c_target: a monotone drift walk whose lateral step is capped so any ball
/// of radius r contains at most c_target * r of arc, then rigidly moved by a
/// seed-derived rotation and offset. Requires n >= 2, c_target >= 2, dim >= 1.
Curve generate_c_packed_curve(std::size_t n, double c_target, std::size_t dim,
                              std::uint64_t seed);

}  // namespace frechet
