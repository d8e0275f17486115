#pragma once

#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

/// A mu-simplification: the subsequence of marked source vertices.
///
/// The first and last source vertices are always marked; every edge of the
/// simplified curve except possibly the last has length >= mu. `marked`
/// holds 0-based source vertex indices, strictly increasing.
struct Simplification {
    Curve curve;
    double mu = 0.0;
    std::vector<std::size_t> marked;
};

/// Greedy scan: mark the first vertex, then repeatedly the first vertex at
/// distance >= mu from the current marked one; the final vertex is always
/// marked. mu must be positive.
Simplification simplify(const Curve& pi, double mu);

/// Sorted deduplicated pairwise vertex distances of pi. Between consecutive
/// values the output of simplify is constant (the marked set changes only
/// when mu crosses one of these).
std::vector<double> simplification_critical_values(const Curve& pi);

}  // namespace frechet
