#include "frechet/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frechet {

namespace {

std::atomic<std::uint64_t> g_exact_calls{0};

struct Interval {
    double lo = 1.0, hi = 0.0;
    bool empty() const { return lo > hi; }
};

// Free sub-interval of [0,1] on the segment a->b inside B(center, r).
Interval free_interval(std::span<const double> a, std::span<const double> b,
                       std::span<const double> center, double r) {
    double qa = 0.0, qb = 0.0, qc = -r * r;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double u = b[i] - a[i];
        const double v = a[i] - center[i];
        qa += u * u;
        qb += u * v;
        qc += v * v;
    }
    if (qa == 0.0) {
        if (qc <= 0.0) return {0.0, 1.0};
        return {};
    }
    const double disc = qb * qb - qa * qc;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    Interval out;
    out.lo = std::max((-qb - sq) / qa, 0.0);
    out.hi = std::min((-qb + sq) / qa, 1.0);
    if (out.lo > out.hi) return {};
    return out;
}

double max_distance_point_to_curve(std::span<const double> p, const Curve& c) {
    double best = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        best = std::max(best, squared_distance(p, c.vertex(i)));
    }
    return std::sqrt(best);
}

// Greedy monotone vertex matching; its leash upper-bounds the Frechet
// distance.
double frechet_upper_bound(const Curve& A, const Curve& B) {
    std::size_t i = 0, j = 0;
    double leash = std::max(squared_distance(A.vertex(0), B.vertex(0)),
                            squared_distance(A.vertex(A.size() - 1), B.vertex(B.size() - 1)));
    while (i + 1 < A.size() || j + 1 < B.size()) {
        double da = std::numeric_limits<double>::infinity();
        double db = da, dab = da;
        if (i + 1 < A.size()) da = squared_distance(A.vertex(i + 1), B.vertex(j));
        if (j + 1 < B.size()) db = squared_distance(A.vertex(i), B.vertex(j + 1));
        if (i + 1 < A.size() && j + 1 < B.size()) {
            dab = squared_distance(A.vertex(i + 1), B.vertex(j + 1));
        }
        if (dab <= da && dab <= db) {
            ++i;
            ++j;
            leash = std::max(leash, dab);
        } else if (da <= db) {
            ++i;
            leash = std::max(leash, da);
        } else {
            ++j;
            leash = std::max(leash, db);
        }
    }
    return std::sqrt(leash);
}

bool decide_impl(const Curve& A, const Curve& B, double r) {
    const std::size_t n = A.size(), m = B.size();
    if (squared_distance(A.vertex(0), B.vertex(0)) > r * r) return false;
    if (n == 1) return max_distance_point_to_curve(A.vertex(0), B) <= r;
    if (m == 1) return max_distance_point_to_curve(B.vertex(0), A) <= r;
    if (squared_distance(A.vertex(n - 1), B.vertex(m - 1)) > r * r) return false;

    // reach_vert[i]: reachable t-interval on boundary {s=i} x [j, j+1] of the
    // current cell row j. reach_horz[i]: reachable s-interval on A-edge i at
    // B-vertex j, carried upward row by row.
    std::vector<Interval> reach_vert(n), reach_horz(n - 1);

    bool bottom_alive = true;  // corner (0,0) free, checked above
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (bottom_alive) {
            Interval f = free_interval(A.vertex(i), A.vertex(i + 1), B.vertex(0), r);
            if (!f.empty() && f.lo <= 0.0) {
                reach_horz[i] = {0.0, f.hi};
                bottom_alive = f.hi >= 1.0;
            } else {
                reach_horz[i] = {};
                bottom_alive = false;
            }
        } else {
            reach_horz[i] = {};
        }
    }

    bool left_alive = true;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        // Left column boundary (0, j).
        if (left_alive) {
            Interval f = free_interval(B.vertex(j), B.vertex(j + 1), A.vertex(0), r);
            if (!f.empty() && f.lo <= 0.0) {
                reach_vert[0] = {0.0, f.hi};
                left_alive = f.hi >= 1.0;
            } else {
                reach_vert[0] = {};
                left_alive = false;
            }
        } else {
            reach_vert[0] = {};
        }

        for (std::size_t i = 0; i + 1 < n; ++i) {
            const Interval entry_left = reach_vert[i];
            const Interval entry_bottom = reach_horz[i];

            // Right boundary (i+1, j): free interval from the ball at A-vertex
            // i+1 on B-edge j, entered from the bottom (any t) or from the
            // left (t >= entry_left.lo); the cell free space is convex.
            Interval right{};
            if (!entry_left.empty() || !entry_bottom.empty()) {
                Interval f = free_interval(B.vertex(j), B.vertex(j + 1), A.vertex(i + 1), r);
                if (!f.empty()) {
                    double lower = f.lo;
                    if (entry_bottom.empty()) lower = std::max(lower, entry_left.lo);
                    if (lower <= f.hi) right = {lower, f.hi};
                }
            }

            Interval top{};
            if (!entry_left.empty() || !entry_bottom.empty()) {
                Interval f = free_interval(A.vertex(i), A.vertex(i + 1), B.vertex(j + 1), r);
                if (!f.empty()) {
                    double lower = f.lo;
                    if (entry_left.empty()) lower = std::max(lower, entry_bottom.lo);
                    if (lower <= f.hi) top = {lower, f.hi};
                }
            }

            reach_vert[i + 1] = right;
            reach_horz[i] = top;
        }
    }

    if (!reach_vert[n - 1].empty() && reach_vert[n - 1].hi >= 1.0) return true;
    if (!reach_horz[n - 2].empty() && reach_horz[n - 2].hi >= 1.0) return true;
    return false;
}

void append_bisector_events(const Curve& verts_curve, const Curve& edge_curve,
                            std::vector<double>& vals) {
    // For vertices u, w and an edge e of the other curve: the point x on e
    // equidistant from u and w opens a monotone passage at radius d(u, x).
    const std::size_t nv = verts_curve.size();
    for (std::size_t e = 0; e + 1 < edge_curve.size(); ++e) {
        auto p = edge_curve.vertex(e);
        auto q = edge_curve.vertex(e + 1);
        std::vector<double> d(p.size());
        double dd = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            d[k] = q[k] - p[k];
            dd += d[k] * d[k];
        }
        if (dd == 0.0) continue;
        for (std::size_t a = 0; a < nv; ++a) {
            auto u = verts_curve.vertex(a);
            double pu2 = squared_distance(p, u);
            double du = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) du += d[k] * (p[k] - u[k]);
            for (std::size_t b = a + 1; b < nv; ++b) {
                auto w = verts_curve.vertex(b);
                double pw2 = squared_distance(p, w);
                double dw = 0.0;
                for (std::size_t k = 0; k < p.size(); ++k) dw += d[k] * (p[k] - w[k]);
                // |x(t)-u|^2 = |x(t)-w|^2 with x(t) = p + t d
                const double denom = 2.0 * (dw - du);
                if (denom == 0.0) continue;
                const double t = (pu2 - pw2) / denom;
                if (t < 0.0 || t > 1.0) continue;
                double s = 0.0;
                for (std::size_t k = 0; k < p.size(); ++k) {
                    const double diff = p[k] + t * d[k] - u[k];
                    s += diff * diff;
                }
                vals.push_back(std::sqrt(s));
            }
        }
    }
}

std::vector<double> critical_values(const Curve& A, const Curve& B) {
    std::vector<double> vals;
    vals.reserve(A.size() * B.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = 0; j < B.size(); ++j) {
            vals.push_back(distance(A.vertex(i), B.vertex(j)));
        }
    }
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = 0; j + 1 < B.size(); ++j) {
            vals.push_back(point_segment_distance(A.vertex(i), B.vertex(j), B.vertex(j + 1)));
        }
    }
    for (std::size_t j = 0; j < B.size(); ++j) {
        for (std::size_t i = 0; i + 1 < A.size(); ++i) {
            vals.push_back(point_segment_distance(B.vertex(j), A.vertex(i), A.vertex(i + 1)));
        }
    }
    append_bisector_events(A, B, vals);
    append_bisector_events(B, A, vals);
    return vals;
}

double exact_impl(const Curve& A, const Curve& B, const ExactConfig& cfg) {
    if (A.size() == 1) return max_distance_point_to_curve(A.vertex(0), B);
    if (B.size() == 1) return max_distance_point_to_curve(B.vertex(0), A);

    const double lb = std::max(distance(A.vertex(0), B.vertex(0)),
                               distance(A.vertex(A.size() - 1), B.vertex(B.size() - 1)));
    const double ub = frechet_upper_bound(A, B);
    if (ub <= lb) return lb;
    if (decide_impl(A, B, lb)) return lb;

    if (cfg.mode == ExactMode::kCriticalValues) {
        std::vector<double> vals = critical_values(A, B);
        vals.push_back(lb);
        vals.push_back(ub);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        auto first = std::lower_bound(vals.begin(), vals.end(), lb);
        auto last = std::upper_bound(first, vals.end(), ub);
        // Smallest critical value accepted by the decision procedure; a hair
        // of relative slack keeps the probe off the exact boundary.
        std::size_t lo = 0, hi = static_cast<std::size_t>(last - first) - 1;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const double v = first[mid];
            if (decide_impl(A, B, v + v * 1e-12)) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return first[lo];
    }

    double lo = lb, hi = ub;
    while (hi - lo > cfg.bisect_rel_tol * std::max(hi, 1e-30)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (decide_impl(A, B, mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace

FreeSpaceDiagram free_space_diagram(const Curve& A, const Curve& B, double r) {
    if (r < 0.0) throw std::domain_error("free-space radius must be non-negative");
    FreeSpaceDiagram d;
    d.rows = A.edge_count();
    d.cols = B.edge_count();
    d.radius = r;
    d.cells.resize(d.rows * d.cols);
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t j = 0; j < d.cols; ++j) {
            FreeSpaceCell& c = d.cells[i * d.cols + j];
            Interval left = free_interval(B.vertex(j), B.vertex(j + 1), A.vertex(i), r);
            Interval bottom = free_interval(A.vertex(i), A.vertex(i + 1), B.vertex(j), r);
            c.left_lo = left.lo;
            c.left_hi = left.hi;
            c.bottom_lo = bottom.lo;
            c.bottom_hi = bottom.hi;
        }
    }
    return d;
}

bool decide_frechet(const Curve& A, const Curve& B, double r) {
    if (r < 0.0) throw std::domain_error("decision radius must be non-negative");
    return decide_impl(A, B, r);
}

double exact_frechet(const Curve& A, const Curve& B, const ExactConfig& cfg) {
    g_exact_calls.fetch_add(1, std::memory_order_relaxed);
    return exact_impl(A, B, cfg);
}

double segment_subcurve_frechet(const Curve& K, CurvePosition u, CurvePosition v,
                                const Segment& seg) {
    validate_position(K, u);
    validate_position(K, v);
    if (normalize(K, v) < normalize(K, u)) {
        throw std::domain_error("segment_subcurve_frechet requires u <= v on K");
    }
    Curve sub = subcurve(K, u, v);
    Curve segc(std::vector<Point>{seg.start, seg.end});
    ExactConfig cfg;
    cfg.mode = ExactMode::kBisection;
    return exact_impl(sub, segc, cfg);
}

std::uint64_t exact_frechet_call_count() { return g_exact_calls.load(std::memory_order_relaxed); }

}  // namespace frechet
