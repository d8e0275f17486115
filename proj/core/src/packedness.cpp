#include "frechet/packedness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace frechet {

namespace {

// splitmix64: deterministic across platforms, unlike <random> distributions.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double gaussian() {
        // Box-Muller; one value per call keeps the stream simple.
        constexpr double two_pi = 6.283185307179586;
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }
};

double edge_length_in_ball(std::span<const double> a, std::span<const double> b,
                           std::span<const double> center, double radius) {
    double qa = 0.0, qb = 0.0, qc = -radius * radius;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double u = b[i] - a[i];
        const double v = a[i] - center[i];
        qa += u * u;
        qb += u * v;
        qc += v * v;
    }
    if (qa == 0.0) return 0.0;  // zero-length edge
    const double disc = qb * qb - qa * qc;
    if (disc <= 0.0) return 0.0;
    const double sq = std::sqrt(disc);
    const double t0 = std::max((-qb - sq) / qa, 0.0);
    const double t1 = std::min((-qb + sq) / qa, 1.0);
    if (t0 >= t1) return 0.0;
    return (t1 - t0) * std::sqrt(qa);
}

std::vector<double> radius_family(const Curve& pi, std::size_t center_count,
                                  std::size_t budget, std::string& note) {
    const std::size_t n = pi.size();
    // Pairwise distances of a vertex subset chosen so the family fits the
    // budget; stride 1 reproduces the full family.
    std::size_t stride = 1;
    auto family_size = [&](std::size_t s) {
        const std::size_t k = (n + s - 1) / s;
        return center_count * k * k;  // radii ~ k^2 (pairs, then halves)
    };
    while (stride < n && family_size(stride) > budget) ++stride;
    if (stride > 1) {
        note = "radii from vertex stride " + std::to_string(stride);
    } else {
        note = "radii from all vertex pairs";
    }

    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);

    std::vector<double> radii;
    radii.reserve(idx.size() * idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const double d = distance(pi.vertex(idx[a]), pi.vertex(idx[b]));
            if (d > 0.0) {
                radii.push_back(d);
                radii.push_back(0.5 * d);
            }
        }
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

}  // namespace

double curve_length_in_ball(const Curve& pi, const Point& center, double radius) {
    double total = 0.0;
    for (std::size_t e = 0; e + 1 < pi.size(); ++e) {
        total += edge_length_in_ball(pi.vertex(e), pi.vertex(e + 1), center.coords, radius);
    }
    return total;
}

PackednessEstimate sampled_packedness(const Curve& pi, const PackednessOptions& opts) {
    if (pi.edge_count() < 1) throw std::domain_error("packedness needs at least one edge");

    PackednessEstimate est;
    const std::size_t n = pi.size();
    const std::size_t dim = pi.dim();

    // Centers: all vertices plus all edge midpoints.
    est.family.centers.reserve(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) est.family.centers.push_back(pi.point(i));
    for (std::size_t e = 0; e + 1 < n; ++e) {
        auto a = pi.vertex(e);
        auto b = pi.vertex(e + 1);
        std::vector<double> mid(dim);
        for (std::size_t k = 0; k < dim; ++k) mid[k] = 0.5 * (a[k] + b[k]);
        est.family.centers.push_back(Point(std::move(mid)));
    }

    std::string note;
    est.family.radii = radius_family(pi, est.family.centers.size(), opts.budget, note);
    est.family.note = "centers: vertices and edge midpoints; " + note + " and halves";
    if (est.family.radii.empty()) {
        est.value = 0.0;  // all vertices coincide
        return est;
    }

    const std::size_t ecount = pi.edge_count();
    std::vector<double> dmin(ecount), elen(ecount);
    std::vector<std::size_t> order(ecount);

    double best = 0.0;
    const double total_len = pi.length();
    for (const Point& c : est.family.centers) {
        double dmax_all = 0.0;
        for (std::size_t e = 0; e < ecount; ++e) {
            dmin[e] = point_segment_distance(c.coords, pi.vertex(e), pi.vertex(e + 1));
            elen[e] = pi.edge_length(e);
            const double de = std::max(distance(c.coords, pi.vertex(e)),
                                       distance(c.coords, pi.vertex(e + 1)));
            dmax_all = std::max(dmax_all, de);
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return dmin[x] < dmin[y]; });
        std::vector<double> prefix(ecount + 1, 0.0);
        for (std::size_t k = 0; k < ecount; ++k) prefix[k + 1] = prefix[k] + elen[order[k]];

        std::size_t k = 0;
        bool covered_once = false;
        for (double r : est.family.radii) {
            while (k < ecount && dmin[order[k]] <= r) ++k;
            if (k == 0) continue;
            if (r >= dmax_all) {
                // The whole curve is inside; larger radii only lower the ratio.
                if (covered_once) break;
                covered_once = true;
                best = std::max(best, total_len / r);
                continue;
            }
            if (prefix[k] / r <= best) continue;  // cannot beat current max
            double len = 0.0;
            for (std::size_t t = 0; t < k; ++t) {
                const std::size_t e = order[t];
                len += edge_length_in_ball(pi.vertex(e), pi.vertex(e + 1), c.coords, r);
            }
            best = std::max(best, len / r);
        }
    }
    est.value = best;
    return est;
}

Curve generate_c_packed_curve(std::size_t n, double c_target, std::size_t dim,
                              std::uint64_t seed) {
    if (n < 2) throw std::domain_error("generator needs n >= 2");
    if (dim < 1) throw std::domain_error("generator needs dim >= 1");
    if (c_target < 2.0) {
        throw std::domain_error("c_target below 2 is infeasible for any curve with an edge");
    }

    SplitMix rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);

    // Monotone drift along axis 0 with lateral jitter capped at lambda per
    // unit of drift. Any ball of radius r then holds at most
    // 2 r sqrt(1 + lambda^2) of arc, so lambda pins packedness <= c_target
    // (with a hair of margin for rounding).
    const double c_eff = c_target * (1.0 - 1e-9);
    const double half = c_eff / 2.0;
    const double lambda = std::sqrt(std::max(half * half - 1.0, 0.0));
    const double step = 1.0;

    std::vector<double> flat(n * dim, 0.0);
    std::vector<double> pos(dim, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        pos[0] += step;
        if (dim > 1 && lambda > 0.0) {
            // Lateral displacement uniform in the (dim-1)-ball of radius
            // lambda * step, via rejection from the enclosing cube.
            std::vector<double> lat(dim - 1);
            while (true) {
                double norm2 = 0.0;
                for (auto& v : lat) {
                    v = rng.uniform(-1.0, 1.0);
                    norm2 += v * v;
                }
                if (norm2 <= 1.0) break;
            }
            for (std::size_t k = 1; k < dim; ++k) pos[k] += lambda * step * lat[k - 1];
        }
        std::copy(pos.begin(), pos.end(), flat.begin() + i * dim);
    }

    // Seed-derived rigid motion: random rotation (Gram-Schmidt over gaussian
    // columns) plus a modest offset. Packedness is rigid-motion invariant.
    std::vector<double> rot(dim * dim, 0.0);
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<double> v(dim);
        for (auto& x : v) x = rng.gaussian();
        for (std::size_t prev = 0; prev < col; ++prev) {
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) dot += v[k] * rot[k * dim + prev];
            for (std::size_t k = 0; k < dim; ++k) v[k] -= dot * rot[k * dim + prev];
        }
        double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (norm < 1e-12) {  // nearly dependent draw; fall back to an axis
            std::fill(v.begin(), v.end(), 0.0);
            v[col] = 1.0;
            norm = 1.0;
        }
        for (std::size_t k = 0; k < dim; ++k) rot[k * dim + col] = v[k] / norm;
    }
    std::vector<double> offset(dim);
    for (auto& x : offset) x = rng.uniform(-10.0, 10.0);

    std::vector<double> out(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < dim; ++r) {
            double acc = offset[r];
            for (std::size_t k = 0; k < dim; ++k) acc += rot[r * dim + k] * flat[i * dim + k];
            out[i * dim + r] = acc;
        }
    }
    return Curve(dim, std::move(out));
}

}  // namespace frechet
