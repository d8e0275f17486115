#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "frechet/geometry.hpp"
#include "frechet/proximity.hpp"
#include "frechet/simplification.hpp"

namespace frechet {

/// Tolerance schedule for one decision run, derived from eps in (0, 1/2):
/// eps_prime = eps/30 bounds the fuzzy answer bands, delta = eps_prime/2 =
/// eps/60 drives both the simplification width and the candidate spacing.
struct EpsilonSchedule {
    double eps;
    double eps_prime;
    double delta;
    explicit EpsilonSchedule(double eps_in);
};

/// A candidate position on the simplified curve, with its embedded point.
struct Candidate {
    CurvePosition pos;
    Point point;
};

/// Layer i holds candidate positions on K for the walk reaching Q's vertex i
/// (0-based here). Every candidate lies within 2r of that vertex;
/// consecutive candidates on one chord are less than delta*r apart.
struct CandidateSet {
    std::size_t layer = 0;
    std::vector<Candidate> points;
};

/// Layered directed graph: edges only between consecutive layers, each edge
/// (w, w') respecting K-order w <= w'.
struct LayeredGraph {
    std::vector<CandidateSet> layers;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges;
};

enum class FuzzyOutcome { kLE, kGT };

enum class DecisionKind { kLE, kGT, kApprox };

/// Three-valued decision: LE(r), GT(r), or Approx(value) with
/// d_F in (value, (1+eps) * value].
struct DecisionOutcome {
    DecisionKind kind = DecisionKind::kGT;
    double value = 0.0;
};

/// One matched pair of a monotone alignment between two curves.
struct AlignmentPair {
    CurvePosition on_p;
    CurvePosition on_q;
    double dist = 0.0;
};
using Alignment = std::vector<AlignmentPair>;

/// Max distance over the alignment's matched pairs. Positions between
/// consecutive pairs move within single edges, so the pairwise max is the
/// true leash of the interpolated matching.
double alignment_leash(const Curve& P, const Curve& Q, const Alignment& a);

/// Candidate sets for all layers: for each vertex q_i of Q, edges of K
/// within 2r are clipped to B(q_i, 2r) and covered with evenly spaced
/// points (spacing < delta*r, chord endpoints included). The first and last
/// layers are overridden to K's endpoints. Layers are built concurrently,
/// capped by FRECHET_THREADS.
std::vector<CandidateSet> build_candidate_sets(const Simplification& K, const Curve& Q,
                                               double r, const EpsilonSchedule& sched,
                                               const SegmentIndex& index);

/// All directed edges between consecutive layers: (w, w') is inserted iff
/// w <= w' in K-order and the Frechet distance between the subcurve
/// K<w, w'> and the segment q_i q_{i+1} is at most r (+1e-9).
LayeredGraph build_layer_edges(const Simplification& K, const Curve& Q, double r,
                               std::vector<CandidateSet> layers);

/// True iff the graph has a directed path from the single first-layer node
/// to the single last-layer node (reference BFS).
bool layered_graph_has_path(const LayeredGraph& g);

/// Fuzzy decision: LE implies d_F(P,Q) <= (1 + eps'/2) r, GT implies
/// d_F(P,Q) > (1 - 2 eps') r. Builds K = simplify(P, delta*r), queries the
/// proximity grid per layer and propagates reachability through the
/// layered structure.
FuzzyOutcome fuzzy_decide(const Curve& P, const Curve& Q, double r,
                          const EpsilonSchedule& sched);

/// Complete decision from two fuzzy runs at r1 = r/(1+eps'/2) and
/// r2 = r/(1-2 eps'): LE(r), GT(r), or Approx(v) with v < d_F <= (1+eps)v.
DecisionOutcome complete_decide(const Curve& P, const Curve& Q, double r,
                                const EpsilonSchedule& sched);

/// Reusable state across repeated decisions on one P: memoizes the
/// simplification and proximity index keyed on the marked-vertex set, and
/// counts fuzzy/complete invocations.
class DeciderContext {
public:
    struct CacheEntry {
        std::vector<std::size_t> marked;
        Simplification simplification;
        std::unique_ptr<SegmentIndex> index;
    };
    std::vector<CacheEntry> cache;
    std::uint64_t fuzzy_calls = 0;
    std::uint64_t complete_calls = 0;
};

struct FuzzyDetail {
    FuzzyOutcome outcome = FuzzyOutcome::kGT;
    /// Monotone P-Q alignment extracted from the accepting path; leash at
    /// most (1 + delta) * r + 2e-9. Present only when requested and LE.
    Alignment witness;
};

FuzzyDetail fuzzy_decide_detail(const Curve& P, const Curve& Q, double r,
                                const EpsilonSchedule& sched, bool want_witness,
                                DeciderContext* ctx);

struct CompleteDetail {
    DecisionOutcome outcome;
    /// For LE: leash <= r. For Approx(v): leash <= v * (1 + eps/3).
    Alignment witness;
};

CompleteDetail complete_decide_detail(const Curve& P, const Curve& Q, double r,
                                      const EpsilonSchedule& sched, bool want_witness,
                                      DeciderContext* ctx);

/// Thread cap for concurrent layer construction: FRECHET_THREADS when set,
/// otherwise the hardware concurrency.
unsigned decider_thread_cap();

}  // namespace frechet
