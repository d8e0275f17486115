#include "frechet/decider.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "frechet/exact.hpp"

namespace frechet {

namespace {

constexpr double kEdgeTol = 1e-9;  // slack on the "<= r" edge comparisons

// ---------------------------------------------------------------------------
// Small deterministic parallel-for over disjoint output slots.

template <typename Fn>
void parallel_for(std::size_t n, unsigned max_threads, Fn&& fn) {
    if (n == 0) return;
    unsigned threads = std::min<std::size_t>(max_threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Chord-level candidate layers.

struct Chord {
    std::uint32_t edge = 0;  // 0-based K edge
    double t0 = 0.0, t1 = 0.0;
    std::uint32_t count = 1;
    double step = 0.0;  // (t1 - t0) / (count - 1) when count > 1

    double pos(std::uint32_t j) const {
        return static_cast<double>(edge) + t0 + step * j;
    }
};

struct ReachRun {
    std::uint32_t chord = 0;  // index into the layer's chord vector
    std::uint32_t first = 0, last = 0;  // inclusive candidate range
};

struct Reach {
    std::vector<ReachRun> runs;
    bool empty() const { return runs.empty(); }
};

// Number of evenly spaced candidates covering a chord of length `len` with
// spacing below `spacing`: both endpoints plus ceil(len/spacing) - 1
// interior points. Near-integer ratios snap to avoid float flicker.
std::uint32_t candidate_count(double len, double spacing) {
    if (len <= 0.0) return 1;
    const double q = len / spacing;
    const double qr = std::round(q);
    double cells;
    if (std::abs(q - qr) <= 1e-9 * std::max(1.0, qr)) {
        cells = qr;
    } else {
        cells = std::ceil(q);
    }
    if (cells < 1.0) cells = 1.0;
    if (cells > 1e8) {
        throw std::domain_error("candidate spacing too fine; eps too small for this radius");
    }
    return static_cast<std::uint32_t>(cells) + 1;
}

std::vector<Chord> interior_layer(const Curve& K, const SegmentIndex& index,
                                  std::span<const double> q, double r, double spacing) {
    std::vector<Chord> chords;
    const auto ids = index.query_edges_within(q, 2.0 * r);
    chords.reserve(ids.size());
    for (std::uint32_t e : ids) {
        auto ts = chord_clip_params(K.vertex(e), K.vertex(e + 1), q, 2.0 * r);
        if (!ts) continue;
        Chord c;
        c.edge = e;
        c.t0 = ts->first;
        c.t1 = ts->second;
        const double len = (c.t1 - c.t0) * K.edge_length(e);
        c.count = candidate_count(len, spacing);
        c.step = c.count > 1 ? (c.t1 - c.t0) / (c.count - 1) : 0.0;
        chords.push_back(c);
    }
    return chords;
}

std::vector<Chord> endpoint_layer(const Curve& K, bool last) {
    Chord c;
    if (last) {
        c.edge = static_cast<std::uint32_t>(K.edge_count() - 1);
        c.t0 = c.t1 = 1.0;
    } else {
        c.edge = 0;
        c.t0 = c.t1 = 0.0;
    }
    return {c};
}

// ---------------------------------------------------------------------------
// Corridor sweep: one reachability step through the free strip of
// (window of K) x (segment qi -> qip1) at radius rho.

struct SegmentContext {
    std::span<const double> qi, qip1;
    double rho, rho2;
    std::vector<double> dvec;  // qip1 - qi
    double dd = 0.0;

    SegmentContext(std::span<const double> a, std::span<const double> b, double rho_in)
        : qi(a), qip1(b), rho(rho_in), rho2(rho_in * rho_in) {
        dvec.resize(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            dvec[k] = b[k] - a[k];
            dd += dvec[k] * dvec[k];
        }
    }

    struct Slice {
        bool ok = false;
        double lo = 0.0, hi = 0.0;
    };

    // Feasible parameter interval on the segment for a fixed point E.
    Slice slice(std::span<const double> E) const {
        double ee = 0.0, ed = 0.0;
        for (std::size_t k = 0; k < E.size(); ++k) {
            const double v = E[k] - qi[k];
            ee += v * v;
            ed += v * dvec[k];
        }
        Slice s;
        if (dd == 0.0) {
            if (ee <= rho2) {
                s.ok = true;
                s.lo = 0.0;
                s.hi = 1.0;
            }
            return s;
        }
        const double disc = ed * ed - dd * (ee - rho2);
        if (disc < 0.0) return s;
        const double sq = std::sqrt(disc);
        s.lo = std::max((ed - sq) / dd, 0.0);
        s.hi = std::min((ed + sq) / dd, 1.0);
        s.ok = s.lo <= s.hi;
        return s;
    }
};

// Point of K at (edge, t) into scratch.
void point_on_edge(const Curve& K, std::uint32_t edge, double t, std::vector<double>& out) {
    auto a = K.vertex(edge);
    auto b = K.vertex(edge + 1);
    out.resize(K.dim());
    for (std::size_t k = 0; k < K.dim(); ++k) out[k] = (1.0 - t) * a[k] + t * b[k];
}

struct SweepState {
    bool entry_alive = false;  // thread entering the current cell at its left vertex
    double entry_t = 0.0;
    bool covered = false;  // a reachable restart lies inside the current cell
    double covered_from = 0.0;
    std::int64_t cell = -1;  // current K edge, -1 before the first event
};

// One layer transition. Restart candidates (already within rho of qi unless
// check_restart_dist) revive the sweep; end candidates are marked reachable
// when a live thread can finish the segment there. Cell free space is
// convex, so state only needs evaluation at cell boundaries.
Reach sweep_step(const Curve& K, const SegmentContext& seg, const std::vector<Chord>& layer_cur,
                 const Reach& reach_cur, const std::vector<Chord>& layer_next,
                 bool check_restart_dist, std::vector<double>& scratch) {
    Reach out;
    if (reach_cur.empty() || layer_next.empty()) return out;

    SweepState st;

    auto cross_into = [&](std::int64_t target_edge) {
        // Advance the state from st.cell into target_edge, folding threads at
        // each intermediate vertex. Dead states teleport.
        if (st.cell < 0) {
            st.cell = target_edge;
            st.entry_alive = false;
            st.covered = false;
            return;
        }
        if (target_edge == st.cell) return;
        if (!st.entry_alive && !st.covered) {
            st.cell = target_edge;
            return;
        }
        for (std::int64_t v = st.cell + 1; v <= target_edge; ++v) {
            const auto s = seg.slice(K.vertex(static_cast<std::size_t>(v)));
            bool alive = false;
            double t = 1.0;
            if (st.entry_alive && s.ok) {
                const double cand = std::max(st.entry_t, s.lo);
                if (cand <= s.hi) {
                    alive = true;
                    t = cand;
                }
            }
            if (st.covered && s.ok) {
                alive = true;
                t = std::min(t, s.lo);
            }
            st.entry_alive = alive;
            st.entry_t = t;
            st.covered = false;
            if (!alive) break;
        }
        st.cell = target_edge;
    };

    std::size_t ri = 0;  // next run
    std::size_t ni = 0;  // next end chord
    while (ri < reach_cur.runs.size() || ni < layer_next.size()) {
        const std::int64_t e_run =
            ri < reach_cur.runs.size()
                ? static_cast<std::int64_t>(layer_cur[reach_cur.runs[ri].chord].edge)
                : std::numeric_limits<std::int64_t>::max();
        const std::int64_t e_end = ni < layer_next.size()
                                       ? static_cast<std::int64_t>(layer_next[ni].edge)
                                       : std::numeric_limits<std::int64_t>::max();
        const std::int64_t e = std::min(e_run, e_end);
        cross_into(e);

        // Restarts on this edge: the earliest reachable candidate covers the
        // rest of the cell.
        while (ri < reach_cur.runs.size() &&
               static_cast<std::int64_t>(layer_cur[reach_cur.runs[ri].chord].edge) == e) {
            const ReachRun& run = reach_cur.runs[ri];
            const Chord& c = layer_cur[run.chord];
            if (!check_restart_dist) {
                const double x = c.t0 + c.step * run.first;
                if (!st.covered || x < st.covered_from) {
                    st.covered = true;
                    st.covered_from = x;
                }
            } else {
                for (std::uint32_t j = run.first; j <= run.last; ++j) {
                    const double x = c.t0 + c.step * j;
                    point_on_edge(K, c.edge, x, scratch);
                    if (squared_distance(std::span<const double>(scratch), seg.qi) <=
                        seg.rho2) {
                        if (!st.covered || x < st.covered_from) {
                            st.covered = true;
                            st.covered_from = x;
                        }
                        break;
                    }
                }
            }
            ++ri;
        }

        // Ends on this edge.
        while (ni < layer_next.size() &&
               static_cast<std::int64_t>(layer_next[ni].edge) == e) {
            const Chord& c = layer_next[ni];
            // Incremental squared distance from candidate j to qip1.
            point_on_edge(K, c.edge, c.t0, scratch);
            double f = squared_distance(std::span<const double>(scratch), seg.qip1);
            double g = 0.0, h = 0.0;
            if (c.count > 1) {
                auto a = K.vertex(c.edge);
                auto b = K.vertex(c.edge + 1);
                double ss = 0.0, as = 0.0;
                for (std::size_t k = 0; k < K.dim(); ++k) {
                    const double sk = c.step * (b[k] - a[k]);
                    ss += sk * sk;
                    as += (scratch[k] - seg.qip1[k]) * sk;
                }
                g = 2.0 * as + ss;
                h = 2.0 * ss;
            }
            bool run_open = false;
            std::uint32_t run_first = 0;
            double x = c.t0;
            for (std::uint32_t j = 0; j < c.count; ++j) {
                const bool source_ok =
                    st.entry_alive || (st.covered && x >= st.covered_from);
                const bool hit = source_ok && f <= seg.rho2;
                if (hit && !run_open) {
                    run_open = true;
                    run_first = j;
                } else if (!hit && run_open) {
                    out.runs.push_back({static_cast<std::uint32_t>(ni), run_first, j - 1});
                    run_open = false;
                }
                f += g;
                g += h;
                x += c.step;
            }
            if (run_open) {
                out.runs.push_back({static_cast<std::uint32_t>(ni), run_first, c.count - 1});
            }
            ++ni;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fuzzy decision core.

struct FuzzyCore {
    const Curve& P;
    const Curve& Q;
    double r;
    EpsilonSchedule sched;
    const Simplification* K = nullptr;
    const SegmentIndex* index = nullptr;
    double rho = 0.0;
    std::vector<double> scratch;

    // Storage owned here when no context cache is supplied.
    Simplification own_simp{Curve(std::vector<Point>{Point{0.0}}), 1.0, {}};
    std::unique_ptr<SegmentIndex> own_index;

    FuzzyCore(const Curve& p, const Curve& q, double r_in, const EpsilonSchedule& s,
              DeciderContext* ctx)
        : P(p), Q(q), r(r_in), sched(s) {
        rho = r + kEdgeTol;
        Simplification simp = simplify(P, sched.delta * r);
        if (ctx) {
            for (auto& entry : ctx->cache) {
                if (entry.marked == simp.marked) {
                    entry.simplification.mu = simp.mu;  // same marked set, new width
                    // Keep the grid within an octave of the probe radius so
                    // query block scans stay small.
                    if (r > 2.0 * entry.index->r() || r < 0.5 * entry.index->r()) {
                        entry.index =
                            std::make_unique<SegmentIndex>(entry.simplification.curve, r);
                    }
                    K = &entry.simplification;
                    index = entry.index.get();
                    return;
                }
            }
            auto idx = std::make_unique<SegmentIndex>(simp.curve, r);
            ctx->cache.push_back(
                DeciderContext::CacheEntry{simp.marked, std::move(simp), std::move(idx)});
            K = &ctx->cache.back().simplification;
            index = ctx->cache.back().index.get();
        } else {
            own_simp = std::move(simp);
            own_index = std::make_unique<SegmentIndex>(own_simp.curve, r);
            K = &own_simp;
            index = own_index.get();
        }
    }

    std::vector<Chord> layer(std::size_t i) const {
        const std::size_t m = Q.size();
        if (i == 0) return endpoint_layer(K->curve, false);
        if (i + 1 == m) return endpoint_layer(K->curve, true);
        return interior_layer(K->curve, *index, Q.vertex(i), r, sched.delta * r);
    }

    Reach initial_reach() const {
        Reach r0;
        r0.runs.push_back({0, 0, 0});
        return r0;
    }

    Reach step(std::size_t i, const std::vector<Chord>& li, const Reach& ri,
               const std::vector<Chord>& lnext) {
        SegmentContext seg(Q.vertex(i), Q.vertex(i + 1), rho);
        return sweep_step(K->curve, seg, li, ri, lnext, i == 0, scratch);
    }
};

// Position (edge, t) of a chord candidate.
std::pair<std::uint32_t, double> run_last_at_most(const std::vector<Chord>& layer,
                                                  const Reach& reach, double limit_param,
                                                  bool& found) {
    // Largest candidate position <= limit_param across the reach runs.
    found = false;
    std::pair<std::uint32_t, double> best{0, 0.0};
    for (auto it = reach.runs.rbegin(); it != reach.runs.rend(); ++it) {
        const Chord& c = layer[it->chord];
        for (std::uint32_t j = it->last + 1; j-- > it->first;) {
            const double p = c.pos(j);
            if (p <= limit_param + 1e-15) {
                best = {c.edge, c.t0 + c.step * j};
                found = true;
                return best;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Witness machinery.

Point eval_position(const Curve& c, CurvePosition pos) {
    if (c.edge_count() == 0) return c.point(0);
    return point_at(c, pos);
}

// Matching of the segment (qbase -> qbase+1 on Q's parameter line) to the
// K-window [a, b]: breakpoints (k_param, q_param), monotone in both.
void replay_threading(const Curve& K, const SegmentContext& seg,
                      std::pair<std::uint32_t, double> a, std::pair<std::uint32_t, double> b,
                      double qbase, std::vector<std::pair<double, double>>& out,
                      std::vector<double>& scratch) {
    const double pa = a.first + a.second;
    const double pb = b.first + b.second;
    double t = 0.0;
    out.emplace_back(pa, qbase);
    for (std::uint32_t v = a.first + 1; v <= b.first; ++v) {
        const double pv = static_cast<double>(v);
        if (pv <= pa || pv > pb) continue;
        const auto s = seg.slice(K.vertex(v));
        if (s.ok) {
            t = std::max(t, s.lo);
            if (t > s.hi) t = s.hi;  // float guard; forward pass said feasible
        }
        if (t > 1.0) t = 1.0;
        out.emplace_back(pv, qbase + t);
    }
    // The feasible band can keep rising past the last vertex; settle t at the
    // final position before closing the segment.
    point_on_edge(K, b.first, b.second, scratch);
    const auto sb = seg.slice(scratch);
    if (sb.ok) {
        t = std::max(t, sb.lo);
        if (t > sb.hi) t = sb.hi;
    }
    if (t > 1.0) t = 1.0;
    out.emplace_back(pb, qbase + t);
    out.emplace_back(pb, qbase + 1.0);
}

// P<->K matching breakpoints (p_param, k_param): skipped source vertices sit
// at their preceding marked vertex, the closing sub-edge sweeps linearly.
std::vector<std::pair<double, double>> lift_breakpoints(const Simplification& simp) {
    std::vector<std::pair<double, double>> pk;
    const auto& marked = simp.marked;
    for (std::size_t j = 0; j + 1 < marked.size(); ++j) {
        pk.emplace_back(static_cast<double>(marked[j]), static_cast<double>(j));
        for (std::size_t s = marked[j] + 1; s + 1 <= marked[j + 1]; ++s) {
            pk.emplace_back(static_cast<double>(s), static_cast<double>(j));
        }
    }
    pk.emplace_back(static_cast<double>(marked.back()),
                    static_cast<double>(marked.size() - 1));
    return pk;
}

Alignment compose_alignment(const Curve& P, const Curve& Q,
                            const std::vector<std::pair<double, double>>& pk,
                            const std::vector<std::pair<double, double>>& kq) {
    // Merge the two monotone staircases on their shared K parameter.
    std::vector<std::pair<double, double>> pq;  // (p_param, q_param)
    std::size_t ia = 0, ib = 0;
    auto interp_p = [&](std::size_t i, double k) {
        if (i + 1 >= pk.size() || pk[i + 1].second <= pk[i].second) return pk[i].first;
        const double w = (k - pk[i].second) / (pk[i + 1].second - pk[i].second);
        return pk[i].first + w * (pk[i + 1].first - pk[i].first);
    };
    auto interp_q = [&](std::size_t i, double k) {
        if (i + 1 >= kq.size() || kq[i + 1].first <= kq[i].first) return kq[i].second;
        const double w = (k - kq[i].first) / (kq[i + 1].first - kq[i].first);
        return kq[i].second + w * (kq[i + 1].second - kq[i].second);
    };
    pq.emplace_back(pk[0].first, kq[0].second);
    while (ia + 1 < pk.size() || ib + 1 < kq.size()) {
        const double ka = ia + 1 < pk.size() ? pk[ia + 1].second
                                             : std::numeric_limits<double>::infinity();
        const double kb = ib + 1 < kq.size() ? kq[ib + 1].first
                                             : std::numeric_limits<double>::infinity();
        if (ka <= kb) {
            ++ia;
            pq.emplace_back(pk[ia].first, interp_q(ib, pk[ia].second));
        } else {
            ++ib;
            pq.emplace_back(interp_p(ia, kq[ib].first), kq[ib].second);
        }
    }

    Alignment out;
    out.reserve(pq.size());
    for (auto& [pp, qq] : pq) {
        CurvePosition on_p = position_from_param(P, pp);
        CurvePosition on_q = position_from_param(Q, qq);
        if (!out.empty() && out.back().on_p == on_p && out.back().on_q == on_q) continue;
        const double d = distance(eval_position(P, on_p), eval_position(Q, on_q));
        out.push_back({on_p, on_q, d});
    }
    return out;
}

// Degenerate single-point side: match the point against every vertex of the
// other curve.
Alignment degenerate_alignment(const Curve& P, const Curve& Q) {
    Alignment out;
    const bool p_point = P.size() == 1;
    const Curve& walk = p_point ? Q : P;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        CurvePosition pos = walk.size() == 1
                                ? CurvePosition{1, 0.0}
                                : position_from_param(walk, static_cast<double>(i));
        CurvePosition ppos{1, 0.0};
        const CurvePosition on_p = p_point ? ppos : pos;
        const CurvePosition on_q = p_point ? pos : ppos;
        const double d = distance(eval_position(P, on_p), eval_position(Q, on_q));
        out.push_back({on_p, on_q, d});
    }
    return out;
}

double max_point_curve_distance(const Curve& point_curve, const Curve& other) {
    double best = 0.0;
    for (std::size_t i = 0; i < other.size(); ++i) {
        best = std::max(best, squared_distance(point_curve.vertex(0), other.vertex(i)));
    }
    return std::sqrt(best);
}

}  // namespace

// ---------------------------------------------------------------------------

EpsilonSchedule::EpsilonSchedule(double eps_in) : eps(eps_in) {
    if (!(eps > 0.0) || !(eps < 0.5)) {
        throw std::domain_error("eps must lie in (0, 1/2)");
    }
    eps_prime = eps / 30.0;
    delta = eps / 60.0;
}

unsigned decider_thread_cap() {
    if (const char* env = std::getenv("FRECHET_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

double alignment_leash(const Curve& P, const Curve& Q, const Alignment& a) {
    double best = 0.0;
    for (const auto& pair : a) {
        best = std::max(best, distance(eval_position(P, pair.on_p), eval_position(Q, pair.on_q)));
    }
    return best;
}

std::vector<CandidateSet> build_candidate_sets(const Simplification& K, const Curve& Q,
                                               double r, const EpsilonSchedule& sched,
                                               const SegmentIndex& index) {
    const std::size_t m = Q.size();
    std::vector<CandidateSet> sets(m);
    const double spacing = sched.delta * r;
    parallel_for(m, decider_thread_cap(), [&](std::size_t i) {
        CandidateSet& set = sets[i];
        set.layer = i;
        std::vector<Chord> chords;
        if (i == 0) {
            chords = endpoint_layer(K.curve, false);
        } else if (i + 1 == m) {
            chords = endpoint_layer(K.curve, true);
        } else {
            chords = interior_layer(K.curve, index, Q.vertex(i), r, spacing);
        }
        for (const Chord& c : chords) {
            for (std::uint32_t j = 0; j < c.count; ++j) {
                const double t = c.t0 + c.step * j;
                CurvePosition pos{static_cast<int>(c.edge) + 1, t};
                set.points.push_back({pos, point_at(K.curve, pos)});
            }
        }
    });
    return sets;
}

LayeredGraph build_layer_edges(const Simplification& K, const Curve& Q, double r,
                               std::vector<CandidateSet> layers) {
    LayeredGraph g;
    g.layers = std::move(layers);
    if (g.layers.empty()) return g;
    g.edges.resize(g.layers.size() - 1);
    parallel_for(g.edges.size(), decider_thread_cap(), [&](std::size_t i) {
        const auto& from = g.layers[i].points;
        const auto& to = g.layers[i + 1].points;
        Segment qseg(Q.point(i), Q.point(i + 1));
        auto& out = g.edges[i];
        for (std::uint32_t a = 0; a < from.size(); ++a) {
            const CurvePosition wa = normalize(K.curve, from[a].pos);
            for (std::uint32_t b = 0; b < to.size(); ++b) {
                const CurvePosition wb = normalize(K.curve, to[b].pos);
                if (wb < wa) continue;
                const double c = segment_subcurve_frechet(K.curve, from[a].pos, to[b].pos, qseg);
                if (c <= r + kEdgeTol) out.emplace_back(a, b);
            }
        }
    });
    return g;
}

bool layered_graph_has_path(const LayeredGraph& g) {
    if (g.layers.empty()) return false;
    std::vector<char> reach(g.layers[0].points.size(), 0);
    if (reach.empty()) return false;
    reach[0] = 1;
    for (std::size_t i = 0; i + 1 < g.layers.size(); ++i) {
        std::vector<char> next(g.layers[i + 1].points.size(), 0);
        for (const auto& [a, b] : g.edges[i]) {
            if (reach[a]) next[b] = 1;
        }
        reach = std::move(next);
        if (std::find(reach.begin(), reach.end(), 1) == reach.end()) return false;
    }
    return !reach.empty() && reach.back() != 0;
}

FuzzyDetail fuzzy_decide_detail(const Curve& P, const Curve& Q, double r,
                                const EpsilonSchedule& sched, bool want_witness,
                                DeciderContext* ctx) {
    if (!(r > 0.0)) throw std::domain_error("decision radius must be positive");
    if (P.dim() != Q.dim()) throw std::domain_error("curve dimensions must match");
    if (ctx) ++ctx->fuzzy_calls;

    FuzzyDetail detail;

    // Point-vs-curve degenerate: decide by the max distance directly.
    if (P.size() == 1 || Q.size() == 1) {
        const double d = P.size() == 1 ? max_point_curve_distance(P, Q)
                                       : max_point_curve_distance(Q, P);
        detail.outcome = d <= r + kEdgeTol ? FuzzyOutcome::kLE : FuzzyOutcome::kGT;
        if (want_witness && detail.outcome == FuzzyOutcome::kLE) {
            detail.witness = degenerate_alignment(P, Q);
        }
        return detail;
    }

    FuzzyCore core(P, Q, r, sched, ctx);
    const std::size_t m = Q.size();

    const bool store_all = m <= 16384;
    const std::size_t stride =
        store_all ? 1
                  : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
    std::vector<Reach> history;  // all reaches, or checkpoints every `stride`
    if (want_witness) history.reserve(store_all ? m : m / stride + 2);

    std::vector<Chord> li = core.layer(0);
    Reach reach = core.initial_reach();
    if (want_witness) history.push_back(reach);

    bool dead = false;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        std::vector<Chord> lnext = core.layer(i + 1);
        reach = core.step(i, li, reach, lnext);
        if (want_witness && ((i + 1) % stride == 0 || store_all)) history.push_back(reach);
        if (reach.empty()) {
            dead = true;
            break;
        }
        li = std::move(lnext);
    }

    detail.outcome = dead ? FuzzyOutcome::kGT : FuzzyOutcome::kLE;
    if (!want_witness || dead) return detail;

    // Backtrack the accepting path: the predecessor of c_{i+1} is the last
    // reachable candidate at layer i that precedes it on K.
    std::vector<std::pair<std::uint32_t, double>> path(m);
    path[m - 1] = {static_cast<std::uint32_t>(core.K->curve.edge_count() - 1), 1.0};

    // Segment-cached replay so the whole backtrack costs one forward pass.
    std::size_t cached_base = static_cast<std::size_t>(-1);
    std::vector<Reach> segment_cache;
    auto reach_at = [&](std::size_t i) -> const Reach& {
        if (store_all) return history[i];
        const std::size_t base = (i / stride) * stride;
        if (cached_base != base) {
            segment_cache.clear();
            segment_cache.push_back(history[i / stride]);
            std::vector<Chord> lcur = core.layer(base);
            for (std::size_t s = base; s + 1 < m && (s + 1 - base) < stride; ++s) {
                std::vector<Chord> lnext = core.layer(s + 1);
                segment_cache.push_back(core.step(s, lcur, segment_cache.back(), lnext));
                lcur = std::move(lnext);
            }
            cached_base = base;
        }
        return segment_cache[i - base];
    };

    for (std::size_t i = m - 1; i-- > 0;) {
        const Reach ri = reach_at(i);
        const std::vector<Chord> layer_i = core.layer(i);
        const double limit = path[i + 1].first + path[i + 1].second;
        bool found = false;
        path[i] = run_last_at_most(layer_i, ri, limit, found);
        if (!found) {
            // Should not happen; fall back to the layer's first reachable.
            const ReachRun& run = ri.runs.front();
            const Chord& c = layer_i[run.chord];
            path[i] = {c.edge, c.t0 + c.step * run.first};
        }
    }

    // Threading replay per step, then lift K to P and compose.
    std::vector<std::pair<double, double>> kq;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        SegmentContext seg(Q.vertex(i), Q.vertex(i + 1), core.rho * (1.0 + 1e-12));
        std::vector<std::pair<double, double>> part;
        replay_threading(core.K->curve, seg, path[i], path[i + 1], static_cast<double>(i),
                         part, core.scratch);
        for (auto& bp : part) {
            if (!kq.empty() && kq.back() == bp) continue;
            kq.push_back(bp);
        }
    }
    detail.witness = compose_alignment(P, Q, lift_breakpoints(*core.K), kq);
    return detail;
}

FuzzyOutcome fuzzy_decide(const Curve& P, const Curve& Q, double r,
                          const EpsilonSchedule& sched) {
    return fuzzy_decide_detail(P, Q, r, sched, false, nullptr).outcome;
}

CompleteDetail complete_decide_detail(const Curve& P, const Curve& Q, double r,
                                      const EpsilonSchedule& sched, bool want_witness,
                                      DeciderContext* ctx) {
    if (!(r > 0.0)) throw std::domain_error("decision radius must be positive");
    if (ctx) ++ctx->complete_calls;
    const double r1 = r / (1.0 + sched.eps_prime / 2.0);
    const double r2 = r / (1.0 - 2.0 * sched.eps_prime);

    CompleteDetail out;
    FuzzyDetail f1 = fuzzy_decide_detail(P, Q, r1, sched, want_witness, ctx);
    if (f1.outcome == FuzzyOutcome::kLE) {
        out.outcome = {DecisionKind::kLE, 0.0};
        out.witness = std::move(f1.witness);
        return out;
    }
    FuzzyDetail f2 = fuzzy_decide_detail(P, Q, r2, sched, want_witness, ctx);
    if (f2.outcome == FuzzyOutcome::kGT) {
        out.outcome = {DecisionKind::kGT, 0.0};
        return out;
    }
    const double v = (1.0 - 2.0 * sched.eps_prime) / (1.0 + sched.eps_prime / 2.0) * r;
    out.outcome = {DecisionKind::kApprox, v};
    out.witness = std::move(f2.witness);
    return out;
}

DecisionOutcome complete_decide(const Curve& P, const Curve& Q, double r,
                                const EpsilonSchedule& sched) {
    return complete_decide_detail(P, Q, r, sched, false, nullptr).outcome;
}

}  // namespace frechet
