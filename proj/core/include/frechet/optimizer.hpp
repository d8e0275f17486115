#pragma once

#include <cstdint>
#include <vector>

#include "frechet/decider.hpp"
#include "frechet/geometry.hpp"
#include "frechet/simplification.hpp"

namespace frechet {

/// One well-separated pair: two disjoint index sets whose diameters are at
/// most distance/s, plus the representative (cell-center) distance.
struct WspdPair {
    std::vector<std::uint32_t> a;
    std::vector<std::uint32_t> b;
    double rep_distance = 0.0;
};

/// s-well-separated pair decomposition via a compressed quadtree. Every
/// unordered pair of distinct positions is covered by exactly one returned
/// pair; exact duplicate points share their representative's fate.
std::vector<WspdPair> wspd_pairs(const std::vector<Point>& points, double s);

/// Sorted positive values bracketing every pairwise vertex distance y of P:
/// some consecutive-or-equal x <= y <= x' <= (1+eps) x exists in values.
struct DistanceSet {
    std::vector<double> values;
    double eps = 0.0;
};

/// Built from an 8/eps-WSPD: each pair's interval
/// [rep*(1 - 2/s), rep*(1 + 2/s)] is covered by a globally anchored
/// geometric ladder with step exactly (1+eps), deduplicated across pairs.
/// Accepts eps in (0, 1].
DistanceSet approximate_distance_set(const Curve& P, double eps);

/// Result of the critical-value search: either an approximation of d_F, or
/// the surviving interval [lo, hi] on which the simplification is constant.
struct SearchResult {
    enum class Kind { kApprox, kInterval };
    Kind kind = Kind::kApprox;
    double value = 0.0;                                        // kApprox
    double lo = 0.0, hi = 0.0;                                 // kInterval
    Simplification k_star{Curve(std::vector<Point>{Point{0.0}}), 1.0, {}};  // kInterval
};

struct SearchOutcome {
    SearchResult result;
    /// Radius whose (re-)decision yields the witness for result.value.
    double witness_radius = 0.0;
    /// Size of the searched value set (distance set plus the top sentinel).
    std::size_t z_size = 0;
};

/// Binary search over the distance-set values interpreted as candidate
/// delta * r: probes complete_decide(P, Q, x/delta). An Approx anywhere
/// short-circuits; otherwise the surviving bracket either yields an
/// approximation (x' <= (1+eps) x) or the fixed-simplification interval.
SearchOutcome search_critical_values_detail(const Curve& P, const Curve& Q,
                                            const EpsilonSchedule& sched,
                                            DeciderContext* ctx);
SearchResult search_critical_values(const Curve& P, const Curve& Q,
                                    const EpsilonSchedule& sched);

struct RefineOutcome {
    double value = 0.0;
    double witness_radius = 0.0;
    std::uint64_t probes = 0;
};

/// Geometric bisection of [lo, hi] driven by the complete decider, reusing
/// the context-cached simplification and index: LE lowers hi, GT raises lo,
/// Approx(v) returns v*(1+eps/3) clamped by the best LE radius; terminates
/// when hi/lo <= 1 + eps/3 and returns hi.
RefineOutcome refine_interval_detail(const Curve& P, const Curve& Q,
                                     const EpsilonSchedule& sched, const SearchResult& interval,
                                     DeciderContext* ctx);
double refine_interval(const Curve& P, const Curve& Q, const EpsilonSchedule& sched,
                       const SearchResult& interval);

struct ApproxResult {
    double value = 0.0;
    Alignment witness;
    std::uint64_t complete_calls = 0;  // search + refine probes
    std::uint64_t fuzzy_calls = 0;
    std::size_t distance_set_size = 0;
    double refine_entry_lo = 0.0, refine_entry_hi = 0.0;  // 0/0 when refine skipped
};

/// (1+eps)-approximation of the Frechet distance: d_F <= value <=
/// (1+eps) d_F, with a monotone alignment whose leash is at most the value.
/// eps must lie in (0, 1/2).
ApproxResult approx_frechet(const Curve& P, const Curve& Q, double eps);

}  // namespace frechet
