#include "frechet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace frechet {

namespace {

// ---------------------------------------------------------------------------
// Compressed quadtree WSPD.

struct QtNode {
    std::vector<double> center;
    double half = 0.0;
    std::uint32_t begin = 0, end = 0;  // range into the point order
    std::vector<std::uint32_t> children;
    bool leaf() const { return children.empty(); }
    std::uint32_t size() const { return end - begin; }
};

struct Quadtree {
    const std::vector<Point>* pts = nullptr;
    std::vector<std::uint32_t> order;  // permutation of point ids
    std::vector<QtNode> nodes;
    std::size_t dim = 0;

    double radius(const QtNode& n) const { return n.half * std::sqrt(static_cast<double>(dim)); }

    std::uint32_t build(std::uint32_t begin, std::uint32_t end, std::vector<double> center,
                        double half) {
        QtNode node;
        node.begin = begin;
        node.end = end;
        if (end - begin == 1 || half <= 1e-300) {
            const Point& p = (*pts)[order[begin]];
            node.center = p.coords;
            node.half = 0.0;
            nodes.push_back(std::move(node));
            return static_cast<std::uint32_t>(nodes.size() - 1);
        }
        // Shrink the cube while all points share one orthant (path
        // compression), then split.
        while (true) {
            std::uint32_t mask0 = orthant((*pts)[order[begin]], center);
            bool same = true;
            for (std::uint32_t i = begin + 1; i < end && same; ++i) {
                same = orthant((*pts)[order[i]], center) == mask0;
            }
            if (!same) break;
            descend(center, half, mask0);
            if (half <= 0.0) break;  // coincident points guard
        }
        node.center = center;
        node.half = half;
        // Partition the range by orthant (stable, deterministic).
        std::vector<std::vector<std::uint32_t>> buckets(1u << dim);
        for (std::uint32_t i = begin; i < end; ++i) {
            buckets[orthant((*pts)[order[i]], center)].push_back(order[i]);
        }
        std::uint32_t write = begin;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;
        for (auto& b : buckets) {
            if (b.empty()) continue;
            const std::uint32_t s = write;
            for (std::uint32_t id : b) order[write++] = id;
            ranges.emplace_back(s, write);
        }
        const std::uint32_t self = static_cast<std::uint32_t>(nodes.size());
        nodes.push_back(std::move(node));
        for (auto [s, e] : ranges) {
            std::vector<double> ccenter = nodes[self].center;
            double chalf = nodes[self].half / 2.0;
            // Child cube center from the orthant of its first point.
            const Point& rep = (*pts)[order[s]];
            for (std::size_t k = 0; k < dim; ++k) {
                ccenter[k] += (rep[k] >= nodes[self].center[k] ? chalf : -chalf);
            }
            const std::uint32_t child = build(s, e, std::move(ccenter), chalf);
            nodes[self].children.push_back(child);
        }
        return self;
    }

    std::uint32_t orthant(const Point& p, const std::vector<double>& center) const {
        std::uint32_t m = 0;
        for (std::size_t k = 0; k < dim; ++k) {
            if (p[k] >= center[k]) m |= (1u << k);
        }
        return m;
    }

    void descend(std::vector<double>& center, double& half, std::uint32_t mask) const {
        half /= 2.0;
        for (std::size_t k = 0; k < dim; ++k) {
            center[k] += (mask & (1u << k)) ? half : -half;
        }
    }
};

double center_distance(const QtNode& a, const QtNode& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.center.size(); ++k) {
        const double d = a.center[k] - b.center[k];
        s += d * d;
    }
    return std::sqrt(s);
}

template <typename Emit>
void wspd_recurse(const Quadtree& qt, std::uint32_t u, std::uint32_t v, double s, Emit&& emit) {
    const QtNode& nu = qt.nodes[u];
    const QtNode& nv = qt.nodes[v];
    if (u == v) {
        if (nu.leaf()) return;
        const auto& ch = nu.children;
        for (std::size_t i = 0; i < ch.size(); ++i) {
            wspd_recurse(qt, ch[i], ch[i], s, emit);
            for (std::size_t j = i + 1; j < ch.size(); ++j) {
                wspd_recurse(qt, ch[i], ch[j], s, emit);
            }
        }
        return;
    }
    const double ru = qt.radius(nu), rv = qt.radius(nv);
    const double d = center_distance(nu, nv);
    // Separation on cell diameters: point-set diameters are at most 2r, so
    // min distance >= d - (ru + rv) >= s * max(diam) certifies the pair.
    if (d - (ru + rv) >= s * 2.0 * std::max(ru, rv)) {
        emit(u, v, d);
        return;
    }
    // Split the larger side (ties split the first argument).
    if (ru >= rv && !nu.leaf()) {
        for (std::uint32_t c : nu.children) wspd_recurse(qt, c, v, s, emit);
    } else if (!nv.leaf()) {
        for (std::uint32_t c : nv.children) wspd_recurse(qt, u, c, s, emit);
    } else {
        for (std::uint32_t c : nu.children) wspd_recurse(qt, c, v, s, emit);
    }
}

// Deduplicate exact-equal points; reps[i] lists original ids at position i.
void dedupe_points(const std::vector<Point>& points, std::vector<Point>& unique_pts,
                   std::vector<std::vector<std::uint32_t>>& reps) {
    std::vector<std::uint32_t> idx(points.size());
    for (std::uint32_t i = 0; i < points.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t x, std::uint32_t y) {
        return points[x].coords < points[y].coords;
    });
    for (std::uint32_t i : idx) {
        if (!unique_pts.empty() && unique_pts.back() == points[i]) {
            reps.back().push_back(i);
        } else {
            unique_pts.push_back(points[i]);
            reps.push_back({i});
        }
    }
}

template <typename Emit>
void run_wspd(const std::vector<Point>& unique_pts, double s, Emit&& emit) {
    if (unique_pts.size() < 2) return;
    Quadtree qt;
    qt.pts = &unique_pts;
    qt.dim = unique_pts[0].dim();
    qt.order.resize(unique_pts.size());
    for (std::uint32_t i = 0; i < unique_pts.size(); ++i) qt.order[i] = i;

    std::vector<double> lo(unique_pts[0].coords), hi(unique_pts[0].coords);
    for (const Point& p : unique_pts) {
        for (std::size_t k = 0; k < qt.dim; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    double half = 0.0;
    std::vector<double> center(qt.dim);
    for (std::size_t k = 0; k < qt.dim; ++k) {
        center[k] = 0.5 * (lo[k] + hi[k]);
        half = std::max(half, 0.5 * (hi[k] - lo[k]));
    }
    if (half <= 0.0) half = 1.0;
    half *= 1.0 + 1e-12;  // keep boundary points strictly inside

    const std::uint32_t root =
        qt.build(0, static_cast<std::uint32_t>(unique_pts.size()), center, half);
    wspd_recurse(qt, root, root, s, [&](std::uint32_t u, std::uint32_t v, double d) {
        emit(qt, u, v, d);
    });
}

std::vector<Point> curve_points(const Curve& c) {
    std::vector<Point> pts;
    pts.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) pts.push_back(c.point(i));
    return pts;
}

constexpr double kIntervalEps = 1e-12;

}  // namespace

std::vector<WspdPair> wspd_pairs(const std::vector<Point>& points, double s) {
    if (!(s > 0.0)) throw std::domain_error("separation factor must be positive");
    if (points.empty()) throw std::domain_error("wspd needs a non-empty point set");

    std::vector<Point> unique_pts;
    std::vector<std::vector<std::uint32_t>> reps;
    dedupe_points(points, unique_pts, reps);

    std::vector<WspdPair> out;
    run_wspd(unique_pts, s,
             [&](const Quadtree& qt, std::uint32_t u, std::uint32_t v, double d) {
                 WspdPair pair;
                 pair.rep_distance = d;
                 for (std::uint32_t i = qt.nodes[u].begin; i < qt.nodes[u].end; ++i) {
                     const auto& ids = reps[qt.order[i]];
                     pair.a.insert(pair.a.end(), ids.begin(), ids.end());
                 }
                 for (std::uint32_t i = qt.nodes[v].begin; i < qt.nodes[v].end; ++i) {
                     const auto& ids = reps[qt.order[i]];
                     pair.b.insert(pair.b.end(), ids.begin(), ids.end());
                 }
                 std::sort(pair.a.begin(), pair.a.end());
                 std::sort(pair.b.begin(), pair.b.end());
                 out.push_back(std::move(pair));
             });
    return out;
}

DistanceSet approximate_distance_set(const Curve& P, double eps) {
    if (!(eps > 0.0) || !(eps <= 1.0)) {
        throw std::domain_error("distance-set eps must lie in (0, 1]");
    }
    if (P.size() < 2) throw std::domain_error("distance set needs at least two vertices");

    DistanceSet ds;
    ds.eps = eps;

    std::vector<Point> unique_pts;
    std::vector<std::vector<std::uint32_t>> reps;
    {
        auto pts = curve_points(P);
        dedupe_points(pts, unique_pts, reps);
    }

    const double s = 8.0 / eps;
    const double log_step = std::log1p(eps);
    std::unordered_set<std::int64_t> ks;
    run_wspd(unique_pts, s,
             [&](const Quadtree&, std::uint32_t, std::uint32_t, double d) {
                 const double lo = d * (1.0 - 2.0 / s);
                 const double hi = d * (1.0 + 2.0 / s);
                 if (!(lo > 0.0)) return;
                 // One rung below and above the covered interval keeps every
                 // bracket's successor inside the set.
                 const auto klo =
                     static_cast<std::int64_t>(std::floor(std::log(lo) / log_step)) - 1;
                 const auto khi =
                     static_cast<std::int64_t>(std::floor(std::log(hi) / log_step)) + 1;
                 for (std::int64_t k = klo; k <= khi; ++k) ks.insert(k);
             });

    ds.values.reserve(ks.size());
    for (std::int64_t k : ks) {
        ds.values.push_back(std::pow(1.0 + eps, static_cast<double>(k)));
    }
    std::sort(ds.values.begin(), ds.values.end());
    ds.values.erase(std::unique(ds.values.begin(), ds.values.end()), ds.values.end());
    return ds;
}

namespace {

double frechet_radius_lower_bound(const Curve& P, const Curve& Q) {
    return std::max(distance(P.vertex(0), Q.vertex(0)),
                    distance(P.vertex(P.size() - 1), Q.vertex(Q.size() - 1)));
}

double frechet_radius_upper_bound(const Curve& P, const Curve& Q) {
    return frechet_radius_lower_bound(P, Q) + P.length() + Q.length();
}

}  // namespace

SearchOutcome search_critical_values_detail(const Curve& P, const Curve& Q,
                                            const EpsilonSchedule& sched,
                                            DeciderContext* ctx) {
    if (P.size() < 2) throw std::domain_error("search needs P with at least two vertices");
    const double delta = sched.delta;
    const double eps = sched.eps;

    std::vector<double> Z = approximate_distance_set(P, eps).values;
    const double r_ub = frechet_radius_upper_bound(P, Q);
    Z.push_back(delta * r_ub);
    std::sort(Z.begin(), Z.end());
    Z.erase(std::unique(Z.begin(), Z.end()), Z.end());
    // Values above the reachable radius can never flip a probe; drop them.
    while (Z.size() > 1 && Z[Z.size() - 2] >= delta * r_ub) Z.pop_back();

    SearchOutcome out;
    out.z_size = Z.size();

    auto probe = [&](double x) {
        return complete_decide_detail(P, Q, x / delta, sched, false, ctx).outcome;
    };
    auto approx_from = [&](const DecisionOutcome& oc, double probe_radius) {
        SearchOutcome so;
        so.z_size = Z.size();
        so.result.kind = SearchResult::Kind::kApprox;
        so.result.value = oc.value * (1.0 + eps / 3.0);
        so.witness_radius = probe_radius;
        return so;
    };

    // Top probe: r_ub bounds d_F, so GT is impossible here.
    std::int64_t ihi = static_cast<std::int64_t>(Z.size()) - 1;
    {
        const DecisionOutcome oc = probe(Z[ihi]);
        if (oc.kind == DecisionKind::kApprox) return approx_from(oc, Z[ihi] / delta);
        if (oc.kind == DecisionKind::kGT) {
            throw std::logic_error("top-of-range probe exceeded the Frechet upper bound");
        }
    }

    // Bisect with a virtual certified-GT below index 0.
    std::int64_t ilo = -1;
    while (ihi - ilo > 1) {
        const std::int64_t mid = ilo + (ihi - ilo) / 2;
        const DecisionOutcome oc = probe(Z[mid]);
        if (oc.kind == DecisionKind::kApprox) return approx_from(oc, Z[mid] / delta);
        if (oc.kind == DecisionKind::kLE) {
            ihi = mid;
        } else {
            ilo = mid;
        }
    }

    const double x_hi = Z[ihi];
    const double hi = x_hi / delta;
    double lo;
    if (ilo >= 0) {
        lo = Z[ilo] / delta;
        if (x_hi <= (1.0 + eps) * Z[ilo]) {
            // Consecutive bracket already tight: x'/delta approximates d_F.
            out.result.kind = SearchResult::Kind::kApprox;
            out.result.value = hi;
            out.witness_radius = hi;
            return out;
        }
    } else {
        // All probed values answered LE: d_F sits below the whole ladder.
        const double r_lb = frechet_radius_lower_bound(P, Q);
        lo = std::max(r_lb * (1.0 - kIntervalEps), hi * 1e-12);
    }

    out.result.kind = SearchResult::Kind::kInterval;
    out.result.lo = lo;
    out.result.hi = hi;
    out.result.k_star = simplify(P, delta * hi);
    out.witness_radius = hi;
    return out;
}

SearchResult search_critical_values(const Curve& P, const Curve& Q,
                                    const EpsilonSchedule& sched) {
    DeciderContext ctx;
    return search_critical_values_detail(P, Q, sched, &ctx).result;
}

RefineOutcome refine_interval_detail(const Curve& P, const Curve& Q,
                                     const EpsilonSchedule& sched, const SearchResult& interval,
                                     DeciderContext* ctx) {
    if (interval.kind != SearchResult::Kind::kInterval) {
        throw std::domain_error("refine_interval needs an interval search result");
    }
    if (!(interval.lo > 0.0)) throw std::domain_error("refine interval lower bound must be positive");
    if (!(interval.hi >= interval.lo)) throw std::domain_error("refine interval must be ordered");

    RefineOutcome out;
    double lo = interval.lo, hi = interval.hi;
    const double stop_ratio = 1.0 + sched.eps / 3.0;
    for (int iter = 0; iter < 200 && hi / lo > stop_ratio; ++iter) {
        const double mid = std::sqrt(lo * hi);
        if (!(mid > lo) || !(mid < hi)) break;
        ++out.probes;
        const DecisionOutcome oc =
            complete_decide_detail(P, Q, mid, sched, false, ctx).outcome;
        if (oc.kind == DecisionKind::kLE) {
            hi = mid;
        } else if (oc.kind == DecisionKind::kGT) {
            lo = mid;
        } else {
            const double v = oc.value * (1.0 + sched.eps / 3.0);
            if (v <= hi) {
                out.value = v;
                out.witness_radius = mid;
            } else {
                out.value = hi;
                out.witness_radius = hi;
            }
            return out;
        }
    }
    out.value = hi;
    out.witness_radius = hi;
    return out;
}

double refine_interval(const Curve& P, const Curve& Q, const EpsilonSchedule& sched,
                       const SearchResult& interval) {
    DeciderContext ctx;
    return refine_interval_detail(P, Q, sched, interval, &ctx).value;
}

ApproxResult approx_frechet(const Curve& P, const Curve& Q, double eps) {
    EpsilonSchedule sched(eps);  // validates eps
    if (P.dim() != Q.dim()) throw std::domain_error("curve dimensions must match");

    ApproxResult out;

    // Degenerate point-vs-curve: the distance is computed directly.
    if (P.size() == 1 || Q.size() == 1) {
        double best = 0.0;
        const Curve& point_side = P.size() == 1 ? P : Q;
        const Curve& other = P.size() == 1 ? Q : P;
        for (std::size_t i = 0; i < other.size(); ++i) {
            best = std::max(best, squared_distance(point_side.vertex(0), other.vertex(i)));
        }
        out.value = std::sqrt(best);
        FuzzyDetail fd = fuzzy_decide_detail(P, Q, std::max(out.value, 1e-300) * (1.0 + 1e-9),
                                             sched, true, nullptr);
        out.witness = std::move(fd.witness);
        return out;
    }

    // Identical parameterized polylines: distance zero, identity alignment.
    if (P == Q) {
        out.value = 0.0;
        for (std::size_t i = 0; i < P.size(); ++i) {
            const CurvePosition pos = position_from_param(P, static_cast<double>(i));
            out.witness.push_back({pos, pos, 0.0});
        }
        return out;
    }

    // All vertices of both curves coincide (but sequences differ): d_F = 0.
    if (frechet_radius_upper_bound(P, Q) == 0.0) {
        out.value = 0.0;
        const CurvePosition p0 = position_from_param(P, 0.0);
        const CurvePosition pe = position_from_param(P, static_cast<double>(P.edge_count()));
        const CurvePosition q0 = position_from_param(Q, 0.0);
        const CurvePosition qe = position_from_param(Q, static_cast<double>(Q.edge_count()));
        out.witness.push_back({p0, q0, 0.0});
        out.witness.push_back({pe, qe, 0.0});
        return out;
    }

    DeciderContext ctx;
    SearchOutcome so = search_critical_values_detail(P, Q, sched, &ctx);
    out.distance_set_size = so.z_size;

    double value, witness_radius;
    if (so.result.kind == SearchResult::Kind::kApprox) {
        value = so.result.value;
        witness_radius = so.witness_radius;
    } else {
        out.refine_entry_lo = so.result.lo;
        out.refine_entry_hi = so.result.hi;
        RefineOutcome ro = refine_interval_detail(P, Q, sched, so.result, &ctx);
        value = ro.value;
        witness_radius = ro.witness_radius;
    }
    out.complete_calls = ctx.complete_calls;
    out.fuzzy_calls = ctx.fuzzy_calls;

    // One witnessed re-decision at the radius that produced the value.
    CompleteDetail cd = complete_decide_detail(P, Q, witness_radius, sched, true, &ctx);
    out.witness = std::move(cd.witness);
    out.value = value;
    return out;
}

}  // namespace frechet
